import pytest

from qcorr.corpus import run_catalog
from qcorr.corpus.format import parse_map_file
from qcorr.corpus.runner import run_entry


@pytest.fixture(scope="module")
def report():
    return run_catalog()


def test_whole_catalog(report):
    c = report.counts()
    assert c["fail"] == 0, report.format()
    assert report.ok
    flagged = {e.id for e in report.entries if e.status == "flagged"}
    assert flagged == {"psi3-as-printed", "psi11-star-curve", "phi12-star-pair", "t13-star-expanded"}


def test_report_serialises(report):
    d = report.to_dict()
    assert d["counts"] == report.counts()
    assert all({"id", "status", "checks"} <= set(e) for e in d["entries"])
    assert report.format().splitlines()[-1].startswith(f"{len(report.entries)} entries")


def test_filters():
    assert {e.id for e in run_catalog("negative-structural").entries} == {
        "isogeny-degenerate", "parity-5-3", "branch-count-4-4"}
    assert [e.id for e in run_catalog("j-e9").entries] == ["j-e9"]
    assert all(e.kind == "q-form" for e in run_catalog("q-form").entries)


def test_stale_flag_is_a_failure():
    e = parse_map_file("id : x\nkind : j-value\ncurve : x^3 - x\nexpect-j : 1728\nexpect : flagged-inconsistent")
    assert run_entry(e).status == "fail"


def test_wrong_expectation_is_a_failure():
    e = parse_map_file("id : x\nkind : j-value\ncurve : x^3 - x\nexpect-j : 1729")
    r = run_entry(e)
    assert r.status == "fail" and not r.checks[0].ok


def test_wrong_error_kind_is_a_failure():
    e = parse_map_file("id : x\nkind : genus0-map\nmap : x^3\nexpect : fail NotBelyi")
    r = run_entry(e)
    assert r.status == "fail"  # x^3 is Belyi, nothing raised


def test_expected_error_passes():
    e = parse_map_file("id : x\nkind : genus0-map\nmap : x^3 - 3x\nexpect : fail NotBelyi")
    assert run_entry(e).status == "pass"
