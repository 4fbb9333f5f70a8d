"""Configuration files and the compact ignition spec syntax."""

import json

import pytest

from detstab import (
    ArrheniusIgnition,
    DomainError,
    HomotopyIgnition,
    StepIgnition,
    TabulatedIgnition,
)
from detstab.config import ignition_from_dict, load_config, parse_ignition_spec


def test_load_json_config(tmp_path):
    path = tmp_path / "wave.json"
    path.write_text(json.dumps(
        {"q": 0.3, "omega": 0.9, "ignition": {"kind": "step", "u_i": 1.2}}))
    params, phi = load_config(str(path))
    assert params.q == 0.3
    assert params.omega == 0.9
    assert isinstance(phi, StepIgnition)
    assert phi.u_i == 1.2


def test_load_toml_config(tmp_path):
    path = tmp_path / "wave.toml"
    path.write_text(
        'q = 0.25\nomega = 1.0\n\n[ignition]\nkind = "arrhenius"\nE = 5.0\n'
        'T = "t1"\nC = "normalized"\n')
    params, phi = load_config(str(path))
    assert params.q == 0.25
    assert isinstance(phi, ArrheniusIgnition)
    assert float(phi.value(2.0)) == pytest.approx(1.0)


def test_config_missing_keys(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"omega": 1.0}))
    with pytest.raises(DomainError):
        load_config(str(path))
    path.write_text(json.dumps({"q": 0.3}))
    with pytest.raises(DomainError):
        load_config(str(path))


def test_nested_homotopy_config():
    phi = ignition_from_dict({
        "kind": "homotopy", "r": 0.4,
        "phi": {"kind": "arrhenius", "E": 6.0, "T": "t2"},
        "phi0": {"kind": "step", "u_i": 0.7},
    })
    assert isinstance(phi, HomotopyIgnition)
    assert phi.r == 0.4
    assert isinstance(phi.phi, ArrheniusIgnition)
    assert isinstance(phi.phi0, StepIgnition)


def test_tabulated_config():
    phi = ignition_from_dict({
        "kind": "tabulated",
        "u": [0.5, 0.8, 1.2, 1.6, 2.0],
        "phi": [0.0, 0.2, 0.5, 0.8, 1.0],
    })
    assert isinstance(phi, TabulatedIgnition)
    assert phi.ignition_level == 0.5


def test_parse_ignition_specs():
    assert isinstance(parse_ignition_spec("step:1.2"), StepIgnition)
    phi = parse_ignition_spec("arrhenius:E=5,T=t1,C=normalized")
    assert isinstance(phi, ArrheniusIgnition)
    assert phi.activation_energy == 5.0
    assert phi.temperature.name == "t1"
    phi2 = parse_ignition_spec("arrhenius:E=3,T=t2")
    assert phi2.prefactor == 1.0


def test_parse_ignition_spec_errors():
    with pytest.raises(DomainError):
        parse_ignition_spec("step:")
    with pytest.raises(DomainError):
        parse_ignition_spec("arrhenius:E")
    with pytest.raises(DomainError):
        parse_ignition_spec("mystery:x=1")
    with pytest.raises(DomainError):
        parse_ignition_spec("tabulated:u=1")
