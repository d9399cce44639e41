import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# acceptance test name -> label printed in the end-of-run summary
ACCEPTANCE_LABELS = [
    ("test_parse_worked_example", "01 parse of the worked example string"),
    ("test_brute_force_equivalence", "02 exhaustive match vs naive parser"),
    ("test_entropy_closed_forms", "03 entropy rate closed forms"),
    ("test_constant_pair_closed_form", "04 constant-pair directed rate"),
    ("test_antisymmetry_bit_exact", "05 bit-exact antisymmetry"),
    ("test_null_calibration", "06 null calibration band"),
    ("test_henon_direction_detection", "07 coupled-map direction detection"),
    ("test_henon_synchronization_collapse", "08 synchronization collapse"),
    ("test_variance_shrinkage", "09 variance shrinkage with length"),
    ("test_false_coupling_signature", "10 drive-response artifact sign"),
    ("test_single_estimate_runtime", "11 single-estimate runtime"),
    ("test_integrator_accuracy_and_order", "12 integrator accuracy and order"),
]


@pytest.fixture(scope="session")
def null_band():
    with open(FIXTURES / "null_band.json") as fh:
        return json.load(fh)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for key in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(key, []):
            if "test_acceptance.py" not in report.nodeid:
                continue
            if getattr(report, "when", "call") != "call" and key != "error":
                continue
            outcomes[report.nodeid.split("::")[-1]] = key
    lines = []
    for test_name, label in ACCEPTANCE_LABELS:
        if test_name in outcomes:
            status = "PASS" if outcomes[test_name] == "passed" else "FAIL"
            lines.append(f"[{status}] {label}")
    if lines:
        terminalreporter.write_sep("-", "acceptance checks")
        for line in lines:
            terminalreporter.write_line(line)
