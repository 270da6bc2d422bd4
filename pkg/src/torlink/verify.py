"""Property suites behind ``torlink verify``.

Each suite returns a SuiteResult; failures carry the seed that reproduces
them.  Trials use seeds derived from the run seed and the trial index, so a
single failing trial can be rerun on its own.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .classify import classify
from .errors import DimensionallyInvalid, NormalizationFailed, TorlinkError
from .exactla import GF, QQ, default_prime
from .gen import check_dimensions, normal_form_table, random_artinian_ideal, scramble
from .koszul import koszul_homology
from .labels import B, C3, G, H, T, ClassLabel
from .linkage import (
    REGIMES,
    check_presentation,
    default_regime,
    descent_ok,
    is_terminal,
    link_chain,
    link_step,
    link_table,
    regime_applies,
)
from .poly import read_ideal
from .rng import SplitMix64, derive_seed
from .theorems import admissible_class, total_betti
from .toralg import invariants_pqr

SUITES = ("pqr", "roundtrip", "propositions", "theorems", "linkchain")


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)  # (seed or case, detail)
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return self.failed == 0 and self.passed > 0

    def record(self, ok, case, detail=""):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append((case, detail))

    def to_json(self):
        return {
            "suite": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "ok": self.ok,
            "failures": [{"case": str(c), "detail": d} for c, d in self.failures],
            "notes": self.notes,
            "seconds": round(self.seconds, 3),
        }

    def summary(self):
        return f"{self.name}: {self.passed}/{self.passed + self.failed} passed"


def expected_pqr(label: ClassLabel):
    return label.pqr()


def all_labels(m: int, n: int):
    out = [C3(), B(), T()] + [G(r) for r in range(2, m + 1)]
    out += [H(p, q) for p in range(m) for q in range(n + 1)]
    fit = []
    for lab in out:
        try:
            check_dimensions(lab, m, n)
        except DimensionallyInvalid:
            continue
        fit.append(lab)
    return fit


def corpus_paths():
    """Shipped example ideals, sorted by name."""
    root = resources.files("torlink") / "corpus"
    return sorted((Path(str(p)) for p in root.iterdir() if p.name.endswith(".ideal")), key=lambda p: p.name)


def corpus_ideals():
    return [read_ideal(p) for p in corpus_paths()]


def random_corpus(count: int, seed: int = 0):
    """Random artinian ideals, alternating Q and the default prime field."""
    out = []
    for k in range(count):
        s = derive_seed(seed, k)
        F = GF(default_prime()) if k % 2 else QQ
        out.append(random_artinian_ideal(4 + k % 4, 2 + k % 3, F, s))
    return out


def suite_pqr(seed=0, trials=None, m_range=range(3, 9), n_range=range(1, 7)):
    res = SuiteResult("pqr")
    for F in (QQ, GF(default_prime())):
        for m in m_range:
            for n in n_range:
                for lab in all_labels(m, n):
                    A = normal_form_table(lab, m, n, F)
                    got = invariants_pqr(A)
                    res.record(got == expected_pqr(lab), f"{lab} m={m} n={n} {F}", f"got {got}")
    return res


def random_roundtrip_case(seed: int, m_range=(4, 8), n_range=(1, 6)):
    """(label, m, n, field) drawn from every class with fitting dimensions."""
    rng = SplitMix64(seed)
    while True:
        m = rng.randint(*m_range)
        n = rng.randint(*n_range)
        kinds = ["B", "T", "G", "H", "H"]
        k = rng.choice(kinds)
        if k == "B":
            lab = B()
        elif k == "T":
            lab = T()
        elif k == "G":
            lab = G(rng.randint(2, m))
        else:
            lab = H(rng.randint(0, m - 1), rng.randint(0, n))
        try:
            check_dimensions(lab, m, n)
        except DimensionallyInvalid:
            continue
        return lab, m, n, (QQ if rng.below(2) == 0 else GF(default_prime()))


def suite_roundtrip(seed=0, trials=500):
    res = SuiteResult("roundtrip")
    for t in range(trials):
        s = derive_seed(seed, t)
        lab, m, n, F = random_roundtrip_case(s)
        if t < 2:
            # force the two small cases where T and H(3,0) share (p, q, r)
            lab, m, n = (T(), H(3, 0))[t], 4, 4
        S, _ = scramble(normal_form_table(lab, m, n, F), s)
        try:
            got = classify(S, s).label
        except TorlinkError as e:
            got = repr(e)
        res.record(got == lab, f"seed={s}", f"{lab} m={m} n={n} {F}: got {got}")
    return res


def regime_instances(regime: str, count: int, seed: int = 0, m_max: int = 8, n_max: int = 6):
    """Generated (label, m, n, field) satisfying the regime hypotheses and
    the admissibility predicates, cycling deterministically."""
    out = []
    for F in (QQ, GF(default_prime())):
        for m in range(3, m_max + 1):
            for n in range(1, n_max + 1):
                for lab in all_labels(m, n):
                    if regime_applies(lab, m, n, regime) and admissible_class(lab, m, n)[0]:
                        out.append((lab, m, n, F))
    rng = SplitMix64(derive_seed(seed, REGIMES.index(regime)))
    rng.shuffle(out)
    return out[:count]


def suite_propositions(seed=0, trials=12, ideals=None):
    """Table-level clauses for every regime, then end-to-end links on ideals."""
    res = SuiteResult("propositions")
    for R in REGIMES:
        cases = regime_instances(R, trials, seed)
        if len(cases) < trials:
            res.notes.append(f"{R}: only {len(cases)} admissible instances")
        for k, (lab, m, n, F) in enumerate(cases):
            s = derive_seed(seed, 7, REGIMES.index(R), k)
            S, _ = scramble(normal_form_table(lab, m, n, F), s)
            c = classify(S, s)
            pres = link_table(c.normalized, c, R)
            v = check_presentation(lab, m, n, pres)
            res.record(v.ok, f"{R} {lab} m={m} n={n} {F} seed={s}", ", ".join(v.failures()))
    ideals = corpus_ideals() if ideals is None else ideals
    for I in ideals:
        K = koszul_homology(I)
        c = classify(K.algebra, seed)
        for R in REGIMES:
            if not regime_applies(c.label, c.m, c.n, R):
                continue
            try:
                step = link_step(I, R, seed=seed, K=K, cls=c)
            except NormalizationFailed:
                continue  # no homogeneous regular sequence realizes this layout
            v = step.verdict
            res.record(v.ok, f"{I.name} {R}", f"{c.summary()} -> {step.after.summary()}: {', '.join(v.failures())}")
    return res


def suite_theorems(seed=0, trials=50, ideals=None):
    res = SuiteResult("theorems")
    ideals = (corpus_ideals() + random_corpus(trials, seed)) if ideals is None else ideals
    for I in ideals:
        try:
            c = classify(koszul_homology(I).algebra, seed)
        except TorlinkError as e:
            res.record(False, I.name, repr(e))
            continue
        ok, notes = admissible_class(c.label, c.m, c.n)
        res.record(ok, I.name, c.summary())
        res.notes += [f"{I.name}: {a}" for a in notes]
    return res


def suite_linkchain(seed=0, trials=None, ideals=None):
    """Iterated linkage reaches C(3) or H(0,0) within 2(m+n) links; the total
    Betti number never grows at a step with p > 0, and default-regime steps
    meet the descent bound."""
    res = SuiteResult("linkchain")
    ideals = corpus_ideals() if ideals is None else ideals
    for I in ideals:
        K = koszul_homology(I)
        c = classify(K.algebra, seed)
        if is_terminal(c.label):
            continue
        bound = 2 * (c.m + c.n)
        steps = link_chain(I, seed, max_steps=bound)
        problems = []
        if not steps or not is_terminal(steps[-1].after.label):
            problems.append("no terminal class reached")
        for s in steps:
            a, b = s.before, s.after
            if not s.verdict.ok:
                problems.append(f"{s.regime} clauses {s.verdict.failures()}")
            if a.p > 0 and total_betti(b.m, b.n) > total_betti(a.m, a.n):
                problems.append(f"total Betti number grew at {a.label}")
            if s.regime == default_regime(a.label, a.m, a.n) and not descent_ok(a, b):
                problems.append(f"descent bound missed at {a.label}")
        path = " -> ".join([str(s.before.label) for s in steps] + ([str(steps[-1].after.label)] if steps else []))
        res.record(not problems, I.name, f"{path}; " + "; ".join(problems))
    return res


def run_suite(name: str, seed: int = 0, trials: int | None = None) -> SuiteResult:
    fn = {
        "pqr": suite_pqr,
        "roundtrip": suite_roundtrip,
        "propositions": suite_propositions,
        "theorems": suite_theorems,
        "linkchain": suite_linkchain,
    }[name]
    t = time.perf_counter()
    res = fn(seed=seed) if trials is None else fn(seed=seed, trials=trials)
    res.seconds = time.perf_counter() - t
    return res
