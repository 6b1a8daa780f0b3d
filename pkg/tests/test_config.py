import json

import pytest

from ktypes.config import (
    BUNDLED,
    ConfigError,
    RealFormConfig,
    bundled_config,
    load_config,
    parse_rational,
    resolve,
)
from ktypes.exact import vec


@pytest.mark.parametrize("name", BUNDLED)
def test_round_trip(name):
    cfg = bundled_config(name)
    again = RealFormConfig.from_dict(json.loads(json.dumps(cfg.to_dict())))
    assert again == cfg
    rf = again.build()
    assert set(rf.g.roots) == set(resolve(name).g.roots)


def test_parse_rational():
    assert parse_rational("-3/4") * 4 == -3
    assert parse_rational(2) == 2
    for bad in [0.5, True, "x", "1/0", None]:
        with pytest.raises(ConfigError):
            parse_rational(bad)


def _sl2_dict(**changes):
    d = bundled_config("sl2").to_dict()
    d.update(changes)
    return d


def test_rejects_unknown_and_missing_keys():
    with pytest.raises(ConfigError, match="unknown"):
        RealFormConfig.from_dict(_sl2_dict(extra=1))
    d = _sl2_dict()
    del d["k_positive"]
    with pytest.raises(ConfigError, match="missing"):
        RealFormConfig.from_dict(d)
    with pytest.raises(ConfigError, match="exactly one"):
        RealFormConfig.from_dict(_sl2_dict(cartan_label="A1"))


def test_rejects_inconsistent_data():
    with pytest.raises(ConfigError):
        RealFormConfig.from_dict(_sl2_dict(compact_roots=[["3"]])).build()
    d = bundled_config("sp4").to_dict()
    d["gram"] = [["2", "0"], ["0", "1"]]
    with pytest.raises(ConfigError):
        RealFormConfig.from_dict(d).build()


def test_load_from_file(tmp_path):
    p = tmp_path / "u11.json"
    p.write_text(json.dumps(bundled_config("u11").to_dict()))
    rf = load_config(p).build()
    assert vec(1, -1) in rf.noncompact
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    (tmp_path / "bad.json").write_text("{")
    with pytest.raises(ConfigError, match="invalid JSON"):
        load_config(tmp_path / "bad.json")
    with pytest.raises(ConfigError):
        bundled_config("so5")
