import json
from importlib import resources

import pytest

from vok import data
from vok.lattice import build_An, cosets_mod2, norm_distribution
from vok.orbifold import e7a5_battery, min_pairing, twisted_halfweight_check
from vok.roots import parse_algebra

NAMES = ["cosets_A8", "twisted_spectrum", "inner_automorphisms"]


@pytest.mark.parametrize("name", NAMES)
def test_files_load_with_provenance(name):
    d = data.load(name)
    assert d["_provenance"]
    raw = resources.files("vok.data").joinpath(data.VERSION, f"{name}.json").read_text()
    assert json.loads(raw) == d


def test_cosets_frozen():
    d = data.load("cosets_A8")
    dist = norm_distribution(cosets_mod2(build_An(8), d["bound"]))
    assert {str(k): v for k, v in dist.items()} == d["distribution"]


def test_inner_automorphisms_frozen():
    d = data.load("inner_automorphisms")
    f4 = parse_algebra("F4")
    assert str(min_pairing(f4, (0, 0, 0, 1), (1, 0, 0, 0))) == d["F4_min_pairing_Lambda4_Lambda1"]
    assert str(min_pairing(f4, (0, 0, 0, 1), (0, 0, 0, 1))) == d["F4_min_pairing_Lambda4_Lambda4"]
    rows = twisted_halfweight_check()["rows"]
    got = [[list(r["lambda1"]), list(r["lambda2"]), str(r["weight"])] for r in rows]
    assert got == d["F4_twisted_weights"]
    e = e7a5_battery()
    assert (str(e["h_norm_voa"]), e["fixed_dim"], e["integral_pair_count"]) == (
        d["E7A5_h_norm"], d["E7A5_fixed_dim"], d["E7A5_integral_pairs"])


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        data.load("nope")
