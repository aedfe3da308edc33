"""Regenerate the regression corpus under tests/data/corpus.

Jet dumps are windows of V(lambda, alpha, e) with e != 0; verma dumps are
truncated irreducible quotients L(X, beta, M).  Run from the repository root:

    python scripts/make_corpus.py
"""

from pathlib import Path

from divfree.dumps import jet_dump, verma_dump
from divfree.io import write_json
from divfree.jet import JetParams
from divfree.verma import CharacterX, JetRestrictionX, build_verma, make_triangular, triangular_from_orthogonal

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus"

JETS = {
    "jet_n2_w1_e1": (JetParams((1,), 0, ("1/3", "1/5"), 1), 2),
    "jet_n2_trivial_e1i": (JetParams((0,), "1/2", ("2/7", "-1/3"), "1+i"), 2),
    "jet_n2_w1_e2": (JetParams((1,), "3", (0, 0), 2), 1),
    "jet_n2_sym2": (JetParams((2,), "-1", ("1/2", "1/2"), "1/4"), 1),
    "jet_n3_w1": (JetParams((1, 0), 1, ("1/3", "1/5", "1/7"), 1), 1),
    "jet_n3_adjoint": (JetParams((1, 1), 0, ("1/2", 0, "-1/3"), "-1"), 1),
}


def vermas():
    e12 = make_triangular([(1, 0)], (0, 1))
    skew = make_triangular([(1, 1)], (1, 2))
    yield "verma_char_std", build_verma(CharacterX(["1/2", "1/3"], 2), e12, 2, 2)
    yield "verma_char_skew", build_verma(CharacterX(["-1", "1/4"], 0), skew, 2, 1)
    yield "verma_char_n3", build_verma(CharacterX(["1/2", "1/3", "1/5"], 1), triangular_from_orthogonal((1, 1, 1)), 1, 1)
    jp = JetParams((1,), "1/2", ("1/3", "1/5"), 1)
    yield "verma_jet_d1", build_verma(JetRestrictionX(jp, e12, (0, 0), 2), e12, 1, 2)
    yield "verma_jet_d2", build_verma(JetRestrictionX(jp, e12, (0, 0), 1), e12, 2, 1)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (params, radius) in JETS.items():
        write_json(OUT / f"{name}.json", jet_dump(params, radius))
    for name, mod in vermas():
        write_json(OUT / f"{name}.json", verma_dump(mod, quotient=True))
    print(f"wrote corpus to {OUT}")


if __name__ == "__main__":
    main()
