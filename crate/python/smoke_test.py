"""Smoke test for the `feec` extension module.

Build first (see README), then run with the directory holding `feec.so`
on PYTHONPATH:  PYTHONPATH=build python3 python/smoke_test.py
"""

import json
import sys

import feec

TRI = [0, 1, 2]


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    return bool(cond)


def main():
    results = []

    phi = feec.PolyForm.whitney(TRI, [1, 2])
    l0phi = feec.PolyForm.lam(TRI, 0).wedge(phi)
    results.append(check(phi.d().k == 2 and not phi.d().is_zero(), "dφ₁₂ is a nonzero 2-form"))
    results.append(check(phi.d().d().is_zero(), "d∘d = 0"))
    results.append(check(l0phi.trace([1, 2]).is_zero(), "λ₀φ₁₂ is trace-free on (1,2)"))

    comps = {tuple(f): str(c) for f, c in l0phi.bubble_components()}
    results.append(check(comps == {(0, 1): "1", (0, 2): "-1"}, f"bubble components {comps}"))
    rebuilt = None
    for f, c in l0phi.bubble_components():
        e = c.bubble_extend(TRI)
        rebuilt = e if rebuilt is None else rebuilt + e
    results.append(check(rebuilt == l0phi, "bubble components reassemble"))

    one = feec.PolyForm.parse(TRI, 0, "1")
    results.append(check(one.ring_star().integrate() == "1/2", "∫ 1 ∧ ⋆̊1 = 1/2 on the triangle"))

    table = json.loads(feec.basis(2, 0, 3))
    results.append(check(table["target_dim"] == 10, "dim P₃Λ⁰(triangle) = 10"))

    gram = json.loads(feec.gram(2, 0, 0))
    results.append(check(gram["positive_definite"], "Gram matrix is positive definite"))

    ex = json.loads(feec.counterexample())
    results.append(check(ex["full"]["koszul"] == "−(1/3)λ₀λ₁λ₂λ₃", "counterexample κ value"))

    names = [n for n, _ in feec.statements()]
    cfg = json.dumps({"max_n": 2, "statements": names[:5]})
    lines = feec.run_verify(cfg)
    verdicts = [json.loads(line)["verdict"] for line in lines]
    results.append(check(verdicts and all(v == "pass" for v in verdicts), f"{len(lines)} verify reports pass"))

    try:
        feec.run_verify('{"min_n": 0}')
        results.append(check(False, "bad config rejected"))
    except ValueError:
        results.append(check(True, "bad config rejected"))

    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
