"""Write every figure dataset and, if matplotlib is around, render the PNGs."""
import argparse
import runpy
import os
from pathlib import Path

from diracstep.figures import FIGURES, write_figure

ap = argparse.ArgumentParser()
ap.add_argument("--out", type=Path, default=Path("figures"))
ap.add_argument("--samples", type=int, default=400)
ap.add_argument("--threads", type=int, default=4)
ap.add_argument("--no-render", action="store_true")
args = ap.parse_args()

for name in FIGURES:
    files = write_figure(name, args.out, args.samples, args.threads)
    print(f"{name}: {len(files)} files")
    if args.no_render:
        continue
    try:
        import matplotlib  # noqa: F401
    except ImportError:
        continue
    here = os.getcwd()
    os.chdir(args.out / name)
    try:
        runpy.run_path(f"plot_{name}.py")
    finally:
        os.chdir(here)
    print(f"  rendered {args.out / name / (name + '.png')}")
