"""Weighted curves through their power covers: theta over S against theta over the cover / c."""
import time

from thetalab import HypersurfaceRing, ModulePresentation, ThetaEngine, build_cover, theta_S

EXAMPLES = [
    (["y0", "y1"], "y0^3 + y1^2", [2, 3], [["y0"], ["y1"]]),
    (["y0", "y1"], "y1^2 - y0^4", [1, 2], [["y1 - y0^2"], ["y1 + y0^2"], ["y0"]]),
    (["y0", "y1"], "y0^5 + y1^2", [2, 5], [["y0"], ["y1"]]),
]


def main():
    for variables, eq, weights, ideals in EXAMPLES:
        S = HypersurfaceRing(variables, eq, weights)
        start = time.perf_counter()
        setup = build_cover(S)
        mods = [ModulePresentation.cyclic(S, "S/(%s)" % ",".join(g), g) for g in ideals]
        mods.append(ModulePresentation.residue_field(S))
        print("S = k[%s]/(%s), weights %s, cover %s, c = %d" % (",".join(variables), eq, weights, setup.R.f, setup.c))
        eng_r, eng_s = ThetaEngine(), ThetaEngine()
        for M in mods:
            row = []
            for N in mods:
                w = theta_S(setup, M, N, eng_r, eng_s)
                row.append(str(w.via_cover))
            print("   %-14s %s" % (M.name, "  ".join("%4s" % x for x in row)))
        print("   (%.2f s)" % (time.perf_counter() - start))


if __name__ == "__main__":
    main()
