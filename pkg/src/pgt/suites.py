"""Verification suites over lists of groups, and their JSON/CSV reports.

Suites: ``lemmas`` (element and pair lemmas), ``theorem`` (one bound
certificate per maximal abelian subgroup), ``ses`` (corollary certificate),
``openq`` (open-question evidence, never fails) and ``oracle`` (bilinear
fast path against the expanded table). Groups may run in worker processes
(``PGT_THREADS``); rows are always emitted in input order and carry no
timing, so reports are byte-identical across runs and worker counts.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__, config
from .catalog import CATALOG, check_entry
from .centralizers import (
    ElementView,
    center,
    centralizer,
    class_size_multiset,
    element_center,
    lemma_check_s2,
)
from .errors import CapExceeded, PGTError
from .groups import expand_bilinear_to_table
from .io import group_from_document
from .maxabelian import bound_certificate, enumerate_maximal_abelian, lemma_check_s3
from .ses import is_semi_extraspecial, open_question_check, ses_certificate

SUITES = ("lemmas", "theorem", "ses", "openq", "oracle")
SCHEMA = "pgt.report/1"
S2_LEMMAS = ("well", "threee", "three1", "three2", "threef")
S3_LEMMAS = ("threeha", "centralizer_abelian", "cyclic", "threeg1", "threeg2", "threeg3", "threeg5")
CSV_COLUMNS = ("suite", "group", "item", "status", "n_total", "b", "l", "a", "t", "detail")


@dataclass
class SuiteReport:
    suite: str
    results: list = field(default_factory=list)
    tool_version: str = __version__
    wall_time: float = 0.0  # kept in memory only; reports stay byte-stable

    @property
    def counterexamples(self) -> list:
        return [r for r in self.results if r["status"] == "fail"]

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool_version": self.tool_version,
            "suite": self.suite,
            "status": "pass" if self.passed else "fail",
            "results": self.results,
            "counterexamples": self.counterexamples,
        }


def _row(suite, group, item, status, /, **data):
    data.pop("group", None)
    row = {"suite": suite, "group": group, "item": item, "status": status}
    for k in ("n_total", "b", "l", "a", "t"):
        if k in data:
            row[k] = data.pop(k)
    row["data"] = data
    return row


# ---------------------------------------------------------------------------
# per-group suite bodies


def _lemmas(G):
    view = ElementView(G)
    rows = []
    for lid in S2_LEMMAS:
        r = lemma_check_s2(G, lid, view=view)
        rows.append(_row("lemmas", G.name, lid, r.status, **_lemma_data(r)))
    for lid in S3_LEMMAS:
        r = lemma_check_s3(G, lid, view=view)
        rows.append(_row("lemmas", G.name, lid, r.status, **_lemma_data(r)))
    return rows


def _lemma_data(r):
    out = {"pairs_checked": r.pairs_checked}
    if r.counterexample is not None:
        out["counterexample"] = [int(x) if isinstance(x, (int, np.integer)) else x for x in r.counterexample]
    if r.note:
        out["note"] = r.note
    return out


def _theorem(G):
    if not G.is_p_group:
        return [_row("theorem", G.name, "-", "not-applicable", reason="not a p-group")]
    rows = []
    for i, A in enumerate(enumerate_maximal_abelian(G)):
        c = bound_certificate(G, A)
        rows.append(
            _row(
                "theorem",
                G.name,
                f"A{i}",
                "pass" if c.valid else "fail",
                n_total=c.n_total,
                b=c.b,
                l=c.l,
                a=c.a,
                t=c.t,
                A_order=c.A_order,
                witnesses=[int(x) for x in c.witnesses],
                product_chain=[int(x) for x in c.product_chain],
                b_global=c.b_global,
                l_global=c.l_global,
                holds=c.holds,
                holds_global=c.holds_global,
                chain_strict=c.chain_strict,
                product_equals_A=c.product_equals_A,
                intersection_equals_A=c.intersection_equals_A,
                t_le_a=c.t_le_a,
            )
        )
    return rows


def _ses(G):
    if not G.is_p_group or not is_semi_extraspecial(G):
        return [_row("ses", G.name, "-", "not-applicable", semi_extraspecial=False)]
    c = ses_certificate(G)
    doc = c.to_json()
    return [_row("ses", G.name, "certificate", "pass" if c.holds else "fail", **doc)]


def _openq(G, max_tuples):
    if not G.is_p_group or not is_semi_extraspecial(G):
        return [_row("openq", G.name, "-", "not-applicable", semi_extraspecial=False)]
    r = open_question_check(G, max_tuples=max_tuples)
    return [_row("openq", G.name, "evidence", "evidence", **r.to_json())]


def oracle_compare(G, cap: int = config.ORACLE_ORDER_CAP) -> list[dict]:
    """Mismatches between the bilinear fast path and brute force on the expanded table."""
    T = expand_bilinear_to_table(G, cap=cap)
    bad = []
    if not np.array_equal(center(G).element_mask(), center(T).mask):
        bad.append({"check": "center"})
    Z = center(T).mask
    for g in range(G.order):
        if not np.array_equal(centralizer(G, g).element_mask(), T.commuting[g]):
            bad.append({"check": "centralizer", "element": g})
            break
    for g in np.flatnonzero(~Z):
        if not np.array_equal(element_center(G, int(g)).element_mask(), element_center(T, int(g)).mask):
            bad.append({"check": "element_center", "element": int(g)})
            break
    if class_size_multiset(G) != class_size_multiset(T):
        bad.append({"check": "class_sizes"})
    mb = [tuple(int(x) for x in A.elements()) for A in enumerate_maximal_abelian(G)]
    mt = [tuple(int(x) for x in A.elements()) for A in enumerate_maximal_abelian(T)]
    if sorted(mb) != sorted(mt):
        bad.append({"check": "maximal_abelian", "bilinear": len(mb), "table": len(mt)})
    return bad


def _oracle(G, max_order):
    if G.model != "bilinear" or G.order > max_order:
        return [_row("oracle", G.name, "-", "not-applicable", reason="table model or above the oracle cap")]
    bad = oracle_compare(G, cap=max_order)
    return [_row("oracle", G.name, "equivalence", "fail" if bad else "pass", mismatches=bad)]


def _catalog_check(G, name):
    if name not in CATALOG:
        return [_row("catalog", G.name, "expected", "not-applicable")]
    bad = check_entry(CATALOG[name], G)
    return [_row("catalog", G.name, "expected", "fail" if bad else "pass", mismatches=_jsonable(bad))]


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


def _run_group(task):
    suite, source, opts = task
    if isinstance(source, str):
        from .catalog import catalog_group

        G = catalog_group(source)
        name = source
    else:
        G = group_from_document(source["doc"], source.get("src", "<memory>"))
        G.name = source["name"]
        name = None
    try:
        if suite == "lemmas":
            rows = _lemmas(G)
        elif suite == "theorem":
            rows = _theorem(G)
        elif suite == "ses":
            rows = _ses(G)
        elif suite == "openq":
            rows = _openq(G, opts["max_tuples"])
        elif suite == "oracle":
            rows = _oracle(G, opts["max_order"])
        elif suite == "catalog":
            rows = _catalog_check(G, name)
        else:
            raise PGTError(f"unknown suite {suite!r}")
    except CapExceeded as exc:
        rows = [_row(suite, G.name, "-", "skipped", reason=str(exc))]
    return _jsonable(rows)


def _threads(threads):
    if threads is None:
        threads = int(os.environ.get("PGT_THREADS", "1") or 1)
    return max(1, threads)


def run_suite(
    suite: str,
    groups,
    threads: int | None = None,
    max_order: int = config.ORACLE_ORDER_CAP,
    max_tuples: int = config.OPENQ_MAX_TUPLES,
) -> SuiteReport:
    """Run one suite over ``groups`` (catalog names or group objects), in input order."""
    if suite not in SUITES + ("catalog",):
        raise PGTError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    opts = {"max_order": max_order, "max_tuples": max_tuples}
    tasks = []
    for g in groups:
        if isinstance(g, str):
            tasks.append((suite, g, opts))
        else:
            tasks.append((suite, {"doc": g.to_json(), "name": g.name}, opts))
    start = time.perf_counter()
    n = _threads(threads)
    if n == 1 or len(tasks) <= 1:
        chunks = [_run_group(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            chunks = list(pool.map(_run_group, tasks))
    report = SuiteReport(suite, [r for rows in chunks for r in rows])
    report.wall_time = time.perf_counter() - start
    return report


def run_all(names=None, threads=None, **caps) -> SuiteReport:
    """Every suite plus the expected-value check over the catalog, merged in a fixed order."""
    names = list(names or CATALOG)
    results = []
    start = time.perf_counter()
    for suite in ("catalog",) + SUITES:
        results += run_suite(suite, names, threads=threads, **caps).results
    report = SuiteReport("all", results)
    report.wall_time = time.perf_counter() - start
    return report


def emit_report(report: SuiteReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=1, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in report.results:
            w.writerow(
                [r["suite"], r["group"], r["item"], r["status"]]
                + ["" if r.get(k) is None else r[k] for k in ("n_total", "b", "l", "a", "t")]
                + [json.dumps(r["data"], separators=(",", ":"), sort_keys=True)]
            )
        return buf.getvalue()
    raise PGTError(f"unknown report format {fmt!r}")
