"""Write the SVG figures: lifting regions for the three families, the fiber
disconnection scenario in E(1,3), and the obstruction witness for the PL domain."""
import argparse
from pathlib import Path

from shapelift.checks import PL_SOURCE, PL_WITNESS, LOOP, path
from shapelift.domains import Ball, Ellipsoid, Polydisk
from shapelift.obstruct import ObstructionInstance, search_witness
from shapelift.pathlift import classify
from shapelift.svg import emit_svg, lift_scene, obstruct_scene


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures", help="output directory")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    figures = {
        "ball_lift.svg": (Ball(3), [path(("1/2", 1), ("1/2", "7/2")), path(("9/10", "13/10"), ("9/10", "7/2"))]),
        "ellipsoid_lift.svg": (Ellipsoid(1, 3), [path(("9/20", "3/2"), ("9/20", "16/5")),
                                                 path(("9/20", "3/2"), ("3/10", "4/5"), ("3/10", "16/5"))]),
        "ellipsoid_loop.svg": (Ellipsoid(1, 3), [LOOP]),
        "polydisk_lift.svg": (Polydisk(1, 2), [path(("2/5", "1/2"), ("2/5", "5/2"))]),
    }
    for name, (X, paths) in figures.items():
        emit_svg(lift_scene(X, paths), out / name)
        verdicts = ", ".join(classify(X, p).verdict for p in paths)
        print(f"{name:24s} {verdicts}")

    inst = ObstructionInstance(PL_SOURCE, Ball(20))
    emit_svg(obstruct_scene(inst, PL_WITNESS), out / "pl_obstruction.svg")
    found = search_witness(inst)
    emit_svg(obstruct_scene(inst, found), out / "pl_obstruction_searched.svg")
    print(f"{'pl_obstruction.svg':24s} given witness")
    print(f"{'pl_obstruction_searched.svg':24s} E=({found.e_r},{found.e_s}), {len(found.path.vertices)} vertices")


if __name__ == "__main__":
    main()
