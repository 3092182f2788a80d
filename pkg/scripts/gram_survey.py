"""Gram matrices of theta on families of small modules, with their sign verdicts.

For the nodal curves k[x,y]/(product of d distinct lines) the point modules
give 1 - d*[i == j]; for the quadric threefold cone the two rulings give a
rank one form.  Output is one block per ring.
"""
import argparse
import time

from thetalab import HypersurfaceRing, ModulePresentation, ThetaEngine, gram_matrix, point_module_gram
from thetalab.poly import Grading, parse_polynomial


def line_arrangement(d):
    """k[x,y]/(x * y * (x - y) * (x - 2y) * ...) with d factors; the product is expanded here."""
    forms = ["x", "y"] + ["x - %d*y" % k for k in range(1, d - 1)]
    g = Grading.standard(2)
    f = parse_polynomial("1", g, ("x", "y"))
    for form in forms:
        f = f * parse_polynomial(form, g, ("x", "y"))
    return HypersurfaceRing(["x", "y"], str(f)), forms


def survey(max_lines):
    for d in range(2, max_lines + 1):
        R, forms = line_arrangement(d)
        mods = [ModulePresentation.cyclic(R, "R/(%s)" % f, [f]) for f in forms]
        start = time.perf_counter()
        rep = gram_matrix(mods, ThetaEngine(), route_b=True)
        ok = rep.gram == point_module_gram(d, d)
        print("d=%d  f = %s" % (d, R.f))
        for row in rep.gram:
            print("   ", row)
        print("    verdict %s, closed form %s, %.2f s" % (rep.verdict, "matches" if ok else "DIFFERS",
                                                       time.perf_counter() - start))

    R = HypersurfaceRing(["x", "y", "u", "v"], "x*u + y*v")
    gens = [["x", "y"], ["u", "v"], ["x", "v"], ["y", "u"], ["x - v", "y + u"]]
    mods = [ModulePresentation.cyclic(R, "R/(%s)" % ",".join(g), g) for g in gens]
    rep = gram_matrix(mods, ThetaEngine())
    print("quadric x*u + y*v, lines", [m.name for m in mods])
    for row in rep.gram:
        print("   ", row)
    print("    verdict %s, rank %d" % (rep.verdict, rep.rank))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description="theta Gram matrix survey")
    ap.add_argument("--max-lines", type=int, default=5)
    survey(ap.parse_args().max_lines)
