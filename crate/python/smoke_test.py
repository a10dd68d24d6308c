"""Smoke test for the Python bindings.

Build and stage the extension first:

    cargo build --release -p koszul-quiver-py
    cp target/release/libkoszul_quiver_py.so python/koszul_quiver.so

then run `python3 python/smoke_test.py` from the repository root.
"""

import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, HERE)

import koszul_quiver as kq  # noqa: E402

DATA = os.path.join(HERE, "..", "data")


def load(name):
    with open(os.path.join(DATA, name), encoding="utf-8") as f:
        return kq.Presentation(f.read())


def main():
    sl2 = load("sl2.quiver")
    assert sl2.vertices == ["1", "2"]
    assert sl2.arrows == [("f", "1", "2"), ("g", "2", "1")]

    dual = sl2.dual()
    assert "relation 1*g*∘f*" in dual.to_text()
    assert kq.Presentation(dual.to_text()).dual().to_text() == sl2.to_text()
    assert sl2.algebra().dims_by_degree()[:3] == [2, 2, 1]

    verdict, koszul, witness = kq.koszul_check(sl2, 6, cross_check=True)
    assert (verdict, koszul, witness) == ("KOSZUL up to 6", True, None)
    verdict, koszul, witness = kq.koszul_check(load("b3.quiver"), 3)
    assert verdict == "NOT KOSZUL, witness λ=1 position −2 shift −3"
    assert witness == ("1", -2, -3)

    assert kq.resolve(sl2, "1", 4) == [(0, [("1", 0)]), (-1, [("2", -1)]), (-2, [("1", -2)])]
    assert (1, -1, 1) in kq.ext_table(sl2, "1", "2", 4)

    lc = kq.linear_complex(sl2, "1", 4)
    module = kq.eps(sl2, lc)
    assert kq.eps_inv(sl2, module) == lc

    simple = "module over sl2.quiver\ndim 2 0 1\n"
    k = kq.kfunctor_text(sl2, simple, "k")
    assert k.startswith("complex over-dual sl2.quiver\n")

    assert kq.koszul_complex_check(sl2, random=5, seed=1)
    assert kq.subquotient_check(load("a4.quiver"), ["2", "3"]) is True

    r1 = kq.random_presentation(7)
    r2 = kq.random_presentation(7)
    assert r1.to_text() == r2.to_text()

    try:
        kq.Presentation("vertex 1\narrow f 1\n")
    except ValueError as e:
        assert "line 2" in str(e)
    else:
        raise AssertionError("malformed input accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
