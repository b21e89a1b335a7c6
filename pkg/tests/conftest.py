"""Acceptance reporting: one PASS/FAIL line per criterion after the run.

Each acceptance criterion maps to one or more test functions in
test_acceptance.py; a criterion passes only when every mapped test passed.
"""

ACCEPTANCE_CRITERIA = {
    "C1": ("comp superset guarantee", ("test_comp_superset_guarantee",)),
    "C2": ("dd subset guarantee", ("test_dd_subset_guarantee",)),
    "C3": (
        "subset argmax oracle equivalence",
        ("test_subset_argmax_oracle_equivalence",),
    ),
    "C4": (
        "structural analysis oracle equivalence",
        ("test_structural_oracle_equivalence",),
    ),
    "C5": ("posterior uniformity", ("test_posterior_uniformity_at_full_size",)),
    "C6": (
        "threshold curve exactness",
        ("test_threshold_curve_exactness", "test_threshold_csv_three_regimes"),
    ),
    "C7": ("chernoff dominance", ("test_chernoff_dominance_at_full_size",)),
    "C8": (
        "test budget trend",
        ("test_budget_trend_dd_subset", "test_budget_trend_comp_superset"),
    ),
    "C9": (
        "masking trend",
        ("test_masking_trend_nondefective_mean", "test_masking_trend_defective_frequency"),
    ),
    "C10": ("simulate determinism", ("test_simulate_byte_determinism",)),
}

_outcomes = {}


def pytest_runtest_logreport(report):
    if not report.nodeid.split("::")[0].endswith("test_acceptance.py"):
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _outcomes[name] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _outcomes[name] = "failed" if report.failed else "skipped"


def pytest_terminal_summary(terminalreporter):
    lines = []
    for cid, (desc, names) in ACCEPTANCE_CRITERIA.items():
        outs = [_outcomes[n] for n in names if n in _outcomes]
        if not outs:
            continue
        status = "PASS" if all(o == "passed" for o in outs) else "FAIL"
        partial = " (partial run)" if len(outs) < len(names) else ""
        lines.append((int(cid[1:]), f"ACCEPTANCE {cid} ({desc}): {status}{partial}"))
    if not lines:
        return
    terminalreporter.section("acceptance")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
