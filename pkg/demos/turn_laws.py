"""Walk through the router's decision machinery by hand, no network.

Prints the compass partition, the full flag transition and mode tables,
and the two turn laws evaluated at a spread of headings. Run it to get a
feel for when the router hugs its momentum and when it swings the long
way around.
"""

import math

from gricsim.geometry import Angle, CompassValue, compass_of
from gricsim.routing import (
    Flag,
    clamp_turn,
    contour_turn,
    mode_selector,
    update_flag,
)

BETA = 1.0 / 6.0


def main() -> None:
    print("compass partition (alpha = bearing of destination relative")
    print("to the current travel direction):")
    for alpha in (-math.pi, -2.0, -1.0, -0.2, 0.0, 0.7, 1.6, 3.0):
        c = compass_of(Angle(alpha))
        print(f"  alpha {alpha:+.2f} rad -> {c.value}")

    print("\nflag transitions (rows: flag before, columns: compass):")
    quadrants = [CompassValue.NE, CompassValue.NW, CompassValue.SE,
                 CompassValue.SW]
    header = "        " + "".join(f"{q.value:>8s}" for q in quadrants)
    print(header)
    for flag in Flag:
        cells = "".join(
            f"{update_flag(flag, q).value:>8s}" for q in quadrants
        )
        print(f"  {flag.value:<6s}{cells}")

    print("\nmode selection (same axes):")
    print(header)
    for flag in Flag:
        cells = "".join(
            f"{mode_selector(flag, q).value:>8s}" for q in quadrants
        )
        print(f"  {flag.value:<6s}{cells}")

    print(f"\nturn laws at beta = 1/6 (inertia cap {BETA * math.pi:.3f} rad,")
    print(f"contour cap {2 * math.pi * BETA:.3f} rad):")
    print("  alpha     inertia turn   contour turn")
    for alpha in (-3.0, -2.0, -1.0, -0.3, 0.3, 1.0, 2.0, 3.0):
        print(
            f"  {alpha:+.2f}       {clamp_turn(alpha, BETA):+.3f}"
            f"         {contour_turn(alpha, BETA):+.3f}"
        )
    print("\nNote the signs: the inertia turn chases the destination, the")
    print("contour turn deliberately rotates the other way around, which")
    print("is what walks a message along a wall instead of into it.")


if __name__ == "__main__":
    main()
