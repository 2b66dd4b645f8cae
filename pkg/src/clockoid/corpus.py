"""Corpus loading and the invariant-check runner.

A corpus entry is a ``<name>.kdf`` diagram next to a ``<name>.json`` file
of expected values (state count, extremal fingerprints, polynomial, tree
count, equivalence class).  The runner executes every invariant suite the
library promises -- bijections, extremal uniqueness, lattice structure,
reachability, exchange parity and factorization, the removal property,
and the two polynomial computations -- and reports one pass/fail line per
check.  Entries sharing a class id additionally get pairwise polynomial
comparison (move invariance).
"""

from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass, field

from . import moves as mv
from . import polynomial as poly
from . import states as st
from .diagram import LinkoidDiagram
from .errors import ClockoidError
from .kdf import parse_kdf_file
from .laurent import LaurentPoly
from .surgery import induced_state, smooth_out_crossing


@dataclass
class CorpusEntry:
    name: str
    kdf_path: str
    diagram: LinkoidDiagram
    expected: dict = field(default_factory=dict)

    @property
    def cls(self):
        return self.expected.get("class")


def load_corpus(directory) -> list[CorpusEntry]:
    """All KDF entries in a directory, sorted by name."""
    entries = []
    for fn in sorted(os.listdir(directory)):
        if not fn.endswith(".kdf"):
            continue
        name = fn[: -len(".kdf")]
        kdf_path = os.path.join(directory, fn)
        diagram = parse_kdf_file(kdf_path, name=name)
        expected = {}
        json_path = os.path.join(directory, name + ".json")
        if os.path.exists(json_path):
            with open(json_path, "r", encoding="utf-8") as fh:
                expected = json.load(fh)
        entries.append(CorpusEntry(name, kdf_path, diagram, expected))
    return entries


@dataclass
class CheckResult:
    entry: str
    check: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        detail = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.entry}: {self.check}{detail}"


@dataclass
class RunReport:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, entry, check, ok, detail=""):
        self.results.append(CheckResult(entry, check, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    def to_json_dict(self):
        return {
            "ok": self.ok,
            "checks": [
                {"entry": r.entry, "check": r.check, "ok": r.ok, "detail": r.detail}
                for r in self.results
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def lines(self):
        return [r.line() for r in self.results]


def _fingerprint(state) -> dict:
    return {str(c): q for c, q in sorted(state.fingerprint().items())}


def check_entry(
    entry: CorpusEntry,
    report: RunReport,
    seeds: int = 20,
    state_cap: int = 10000,
) -> None:
    """Run every per-entry invariant suite, appending results to ``report``."""
    d = entry.diagram
    name = entry.name
    exp = entry.expected

    states = st.enumerate_states(d, cap=state_cap)
    count = len(states)
    perm_count = poly.state_count_permanent(d)
    ok = count == perm_count
    if "state_count" in exp:
        ok = ok and count == exp["state_count"]
    report.add(name, "state-count", ok, f"enumerated {count}, permanent {perm_count}")

    # state <-> trail bijection, trail validity
    ok, detail = True, f"{count} states round-tripped"
    for s in states:
        trail = st.state_to_trail(d, s)
        if sorted(trail.walk) != list(range(d.num_arcs)):
            ok, detail = False, "trail does not cover each arc once"
            break
        if st.trail_to_state(d, trail) != s:
            ok, detail = False, f"round trip failed for {s.fingerprint()}"
            break
    report.add(name, "bijection-round-trip", ok, detail)

    # extremal existence/uniqueness, deterministic and randomized orders
    clocked = mv.clocked_state(d)
    counterclocked = mv.counterclocked_state(d)
    ok = all(
        mv.clocked_state(d, start=s) == clocked
        and mv.counterclocked_state(d, start=s) == counterclocked
        for s in states
    )
    rng = random.Random(20260801)
    for _ in range(seeds):
        start = rng.choice(states)
        if mv.clocked_state(d, start=start, rng=rng) != clocked:
            ok = False
        if mv.counterclocked_state(d, start=start, rng=rng) != counterclocked:
            ok = False
    detail = "unique from all starts"
    if "clocked" in exp and _fingerprint(clocked) != exp["clocked"]:
        ok, detail = False, "clocked state differs from expected fingerprint"
    if "counterclocked" in exp and _fingerprint(counterclocked) != exp["counterclocked"]:
        ok, detail = False, "counter-clocked state differs from expected fingerprint"
    report.add(name, "extremal-unique", ok, detail)

    graph = mv.state_graph(d, cap=state_cap)
    lattice = mv.verify_lattice(graph)
    report.add(
        name,
        "lattice",
        lattice.ok,
        "no violations" if lattice.ok else "; ".join(lattice.violations),
    )
    report.add(
        name,
        "reachability",
        lattice.all_reachable_from_top and lattice.top is not None,
        "all states reachable from the clocked state by clockwise moves",
    )

    # exchange parity (knot-type: even everywhere) and factorization
    trails = {s: st.state_to_trail(d, s) for s in states}
    parity_ok = True
    factored = 0
    fact_ok = True
    for s1, s2 in itertools.combinations(states, 2):
        diff = st.exchange_diff(trails[s1], trails[s2])
        if d.is_knot_type() and len(diff) % 2 == 1:
            parity_ok = False
        if 1 <= len(diff) <= 2:
            c1, c2 = s1.by_crossing(), s2.by_crossing()
            deltas = {(c2[c][1] - c1[c][1]) % 4 for c in diff.sites}
            if deltas == {1} or deltas == {3}:
                try:
                    mv.factorize_exchange(d, s1, s2)
                    mv.factorize_exchange(d, s2, s1)
                    factored += 1
                except ClockoidError:
                    fact_ok = False
    if d.is_knot_type():
        report.add(name, "exchange-parity", parity_ok, "all trail diffs even")
    report.add(
        name, "factorize-exchange", fact_ok, f"{factored} sensed exchange pairs"
    )

    # removal: smoothing out any crossing of the clocked state stays clocked
    ok, detail = True, f"all {d.n} crossings"
    for cid in sorted(d.crossing_by_id):
        corner = clocked.by_crossing()[cid][1]
        removal = smooth_out_crossing(d, cid, corner % 2)
        induced = induced_state(clocked, removal, cid)
        if induced != mv.clocked_state(removal.diagram):
            ok, detail = False, f"removal at crossing {cid} not clocked"
            break
    report.add(name, "removal", ok, detail)

    # polynomial: state sum == permanent == expected; all-ones == count
    p_sum = poly.mock_alexander(d)
    p_perm = poly.permanent_polynomial(d)
    ok = p_sum == p_perm
    detail = str(p_sum)
    if "poly" in exp and p_sum != LaurentPoly.parse(exp["poly"]):
        ok, detail = False, f"{p_sum} != expected {exp['poly']}"
    from .weights import WeightTable

    ones = poly.mock_alexander(d, WeightTable.all_ones())
    if ones != LaurentPoly.monomial(count, 0):
        ok, detail = False, "all-ones table does not count states"
    report.add(name, "polynomial", ok, detail)

    trees = poly.count_states_matrixtree(d)
    detail = f"matrix-tree {trees} vs states {count}: {'agree' if trees == count else 'differ'}"
    ok = True
    if "tree_count" in exp:
        ok = trees == exp["tree_count"]
    report.add(name, "tree-count-comparison", ok, detail)


def check_classes(entries, report: RunReport) -> None:
    """Pairwise polynomial identity inside each equivalence class."""
    by_class: dict[str, list[CorpusEntry]] = {}
    for e in entries:
        if e.cls:
            by_class.setdefault(e.cls, []).append(e)
    for cls, members in sorted(by_class.items()):
        values = [(e.name, poly.mock_alexander(e.diagram)) for e in members]
        base_name, base = values[0]
        bad = [n for n, v in values if v != base]
        report.add(
            f"class:{cls}",
            "invariance",
            not bad,
            f"{len(members)} entries, value {base}" if not bad else f"differs: {bad}",
        )


def run_corpus(directory, seeds: int = 20, state_cap: int = 10000) -> RunReport:
    """Load a corpus directory and run everything."""
    entries = load_corpus(directory)
    report = RunReport()
    for entry in entries:
        check_entry(entry, report, seeds=seeds, state_cap=state_cap)
    check_classes(entries, report)
    return report
