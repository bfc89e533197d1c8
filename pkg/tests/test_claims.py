import pytest

from cycdes.claims import CLAIMS, VerificationReport, format_params, run_cell
from cycdes.perms import mask
from cycdes.tableaux import strip_shape


@pytest.mark.parametrize("cid", sorted(CLAIMS))
def test_each_claim_passes_at_small_n(cid):
    claim = CLAIMS[cid]
    for n in range(claim.min_n, min(claim.min_n + 3, claim.default_n[1]) + 1):
        for cell in claim.cells(n, None):
            rep = run_cell(claim, cell)
            assert rep.status == "pass", (cell, rep.witness)


def test_claim_ranges_are_sane():
    for claim in CLAIMS.values():
        lo, hi = claim.default_n
        assert claim.min_n <= lo <= hi <= 10


def test_j_cells_validate_mask():
    claim = CLAIMS["thm-equid"]
    assert claim.cells(5, mask([1, 3])) == [{"n": 5, "J": mask([1, 3])}]
    with pytest.raises(ValueError):
        claim.cells(5, mask([4]))


def test_report_json():
    rep = VerificationReport("x", {"n": 4, "J": 5, "shape": strip_shape(1, 4)}, "fail", {"kind": "mask", "mask": "{1}"})
    data = rep.to_json()
    assert data["params"] == {"n": 4, "J": "{1,3}", "shape": "(1)+(3)"}
    assert data["counterexample"]["kind"] == "mask"
    assert format_params({"gamma": (2, 0, 1)}) == {"gamma": "(2,0,1)"}


def test_hook_shapes_are_reported_as_failing_validation():
    # a cell on a hook passes precisely because the fiber check rejects it
    claim = CLAIMS["lemma-fibers"]
    from cycdes.tableaux import straight

    assert run_cell(claim, {"n": 4, "shape": straight((3, 1))}).status == "pass"
