import pytest

from octostiefel.errors import UnknownSuite
from octostiefel.exactnum import Float
from octostiefel.suites import SUITES, run_suite


@pytest.fixture(scope="module")
def full_report():
    return run_suite("all")


def test_no_failures(full_report):
    assert not full_report.failed
    assert all(it.status in ("PASS", "ADVISORY") for it in full_report.items)


def test_every_group_is_covered(full_report):
    prefixes = {it.claim_id.split("-")[0] for it in full_report.items}
    assert prefixes == {"OCT", "FRM", "OMG", "GEO"}
    ids = [it.claim_id for it in full_report.items]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)


def test_sub_suites_partition_all(full_report):
    ids = []
    for name in SUITES[1:]:
        ids += [it.claim_id for it in run_suite(name).items] if name != "frames" else []
    frames = {it.claim_id for it in full_report.items if it.claim_id.startswith("FRM")}
    assert set(ids) | frames == {it.claim_id for it in full_report.items}


def test_float_mode_marks_items_advisory():
    report = run_suite("octonion", Float())
    assert not report.failed
    assert all(it.status == "ADVISORY" for it in report.items if it.mode == "float")


def test_markdown_and_json():
    report = run_suite("geometry")
    md = report.to_markdown()
    assert md.count("\n") >= len(report.items)
    obj = report.to_json()
    assert obj["suite"] == "geometry" and len(obj["items"]) == 3


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nonsense")
