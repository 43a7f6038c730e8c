#!/usr/bin/env python3
"""Smoke test for the plonka extension module.

Builds the worked two-chain example end to end: sum, decomposition, unit,
counit and the full adjunction check, plus the band/semilattice validators
and the document format. Run from the repository root after

    cargo build -p plonka-py

The built cdylib is loaded straight out of the cargo target directory.
"""

import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    for profile in ("debug", "release"):
        built = REPO / "target" / profile / "libplonka.so"
        if built.exists():
            stage = Path(tempfile.mkdtemp(prefix="plonka-py-"))
            shutil.copy2(built, stage / "plonka.so")
            sys.path.insert(0, str(stage))
            import plonka

            return plonka
    sys.exit("libplonka.so not found; run `cargo build -p plonka-py` first")


plonka = load_module()


def check(label, condition):
    status = "ok" if condition else "FAIL"
    print(f"  {label}: {status}")
    if not condition:
        sys.exit(1)


print("signature and algebra basics")
sig = plonka.Signature([("s", 2), ("c", 0)])
check("restrict_nonzero drops constants", sig.restrict_nonzero().symbols() == [("s", 2)])
sig = sig.restrict_nonzero()

const = plonka.FiniteAlgebra(sig, 2, [[0, 0, 0, 0]])
check("term evaluation folds tables", const.evaluate("s(s(x,x),x)", ["x"], [1]) == 0)
check(
    "congruence generation propagates",
    plonka.FiniteAlgebra(plonka.Signature([("u", 1)]), 3, [[1, 2, 2]]).generated_congruence(
        [(0, 1)]
    )
    == [[0, 1, 2]],
)

print("bands and semilattices")
check("right zero fails D3", plonka.lnb_counterexample(2, [0, 1, 0, 1]) == "D3 at (0,0,1)")
band = plonka.LeftNormalBand(2, [0, 0, 1, 1])
check("left zero collapses to a point", band.semilattice_reflection()[0].carrier == 1)
two = plonka.SupSemilattice.chain(2)
check("join algebra is the join table", two.join_algebra(sig).table(0) == [0, 1, 1, 1])
free, embedding = plonka.SupSemilattice.free(2)
check("free semilattice on two generators", free.carrier == 3 and embedding == [0, 1])
check(
    "reflection of the max algebra is the chain",
    plonka.FiniteAlgebra(sig, 2, [[0, 1, 1, 1]]).semilattice_reflection()[1] == [0, 1],
)

print("the two-chain worked example")
a0 = plonka.FiniteAlgebra(sig, 1, [[0]])
a1 = plonka.FiniteAlgebra(sig, 2, [[0, 0, 0, 0]])
system = plonka.InductiveSystem(sig, two, [a0, a1], {(0, 1): [0]})
total = system.plonka_sum()
check("sum carrier is the disjoint union", total.carrier == 3)
check("sum elements are index-major", system.sum_elements() == [(0, 0), (1, 0), (1, 1)])
check("s((0,a),(1,c)) lands on (1,b)", total.algebra.op(0, [0, 2]) == 1)
check("operator pushes along the transition", total.band.d(0, 2) == 1 and total.band.d(2, 0) == 2)
check("no derived law is violated", total.derived_law_violations() == [])

decomposed, embedding = total.decompose()
check("blocks are the fibers", embedding == [[0], [1, 2]])
check("transitions are d against a representative", decomposed.transition(0, 1) == [0])
check("counit is the identity relabeling", total.counit() == [0, 1, 2])

report = system.verify_adjunction()
print(f"  adjunction report: {report!r}")
check("factorization, uniqueness and triangles", report.passed())
check("exactly one matching morphism", report.matching_morphisms == 1)

print("operator enumeration")
ops = const.plonka_operators()
check("the constant algebra has exactly the left-zero operator", ops == [[0, 0, 1, 1]])

print("document format")
fixture = (REPO / "fixtures" / "twochain.sys").read_text()
kind, canonical = plonka.canonicalize_document(fixture)
check("fixture is canonical", kind == "system" and canonical == fixture)
code, out = plonka.run_cli(["roundtrip", str(REPO / "fixtures" / "twochain.sys")])
check("CLI roundtrip passes", code == 0 and out == "counit: isomorphism; triangles: pass\n")

print("smoke test passed")
