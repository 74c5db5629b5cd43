"""Smoke test for the pyzeckgodel extension module.

Build and run from the repository root:

    cargo build --release -p zeckgodel-py --features extension-module
    cp target/release/libpyzeckgodel.so python/pyzeckgodel.so
    python3 python/smoke_test.py
"""

import pyzeckgodel as zg


def main():
    assert zg.z_decode(32) == [7, 5, 3]
    assert zg.z_encode([7, 5, 3]) == 32
    assert zg.fib(1) == 1 and zg.fib(2) == 2 and zg.fib(100) == 573147844013817084101
    assert zg.cantor_pair(0, 2) == 3
    assert zg.cantor_unpair(2**300) is not None

    c = zg.seq_encode([0, 0])
    assert c.support == [7, 3] and c.number() == 24 and len(c) == 2
    assert c == zg.SeqCode.from_number(24)
    assert c.items() == [0, 0] and c.symbol_at(2) == 0
    big = zg.seq_encode([10**30, 1])
    assert big.items() == [10**30, 1]
    try:
        big.number()
        raise AssertionError("huge code materialized")
    except zg.ZeckGodelError as e:
        assert "code_too_large" in str(e)

    f = zg.encode("(forall v0 (= v0 (S 0)))")
    assert zg.is_wff_code(f)
    assert zg.decode(f) == "(forall v0 (= v0 (S 0)))"
    assert zg.decode(zg.substitute("(= v0 v0)", "0")) == "(= 0 0)"

    fp = zg.fixed_point("(= v0 v0)")
    assert fp["psi"] == zg.diag(fp["m"])
    g = zg.godel_sentence()
    assert g["psi"] == zg.diag(g["m"])
    assert zg.decode(g["psi"]).startswith("(not (Prov (diag ")

    a = "(-> (= 0 0) (-> (= (S 0) (S 0)) (= 0 0)))"
    steps = [a, f"(-> {a} (-> (Prov (S 0)) {a}))", f"(-> (Prov (S 0)) {a})"]
    assert zg.check_proof(zg.encode_proof(steps))
    assert zg.prove(steps[2], 3) == steps
    assert zg.prove("(not (= 0 0))", 4) is None
    assert zg.Theory().is_axiom(a)

    assert zg.oracle_check(1, 2, 4) and zg.oracle_solve(5, 5) is None
    assert zg.mp_witness(10) == (9, 10, 12)
    assert zg.code_p([3, 2]) == 72 and zg.decode_p(72) == [3, 2]
    report = zg.compare_sizes([1])
    assert report["zeck_max_index"] == 9 and report["prime_bits"] == 2
    print("pyzeckgodel smoke test: ok")


if __name__ == "__main__":
    main()
