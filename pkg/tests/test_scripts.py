import importlib.util
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


@pytest.mark.parametrize("name, overrides", [
    ("envelope_vs_oracle", {"graphs": 20, "max_n": 5}),
    ("quotient_exactness", {"max_n": 7, "trials": 1}),
    ("diagonal_example", {}),
])
def test_script_runs_clean(name, overrides, capsys):
    mod = load(name)
    assert mod.main(mod.Config(**overrides)) == 0
    assert capsys.readouterr().out
