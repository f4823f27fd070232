import json
import subprocess
import sys

import numpy as np
import pytest

from pcbd.cli import main
from pcbd.constructions import METHODS, MethodParams, construct
from pcbd.errors import LayoutError, ShapeError
from pcbd.info import compute_info
from pcbd.io import (
    design_from_csv,
    design_from_dict,
    design_to_csv,
    design_to_dict,
    load_design,
    manifest_path,
)
from pcbd.optimality import certify


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("method", sorted(METHODS))
def test_json_round_trip_keeps_claim(method):
    d = construct(METHODS[method].smallest)
    back = design_from_dict(json.loads(json.dumps(design_to_dict(d))))
    assert back.same_as(d)
    assert back.provenance.claim == d.provenance.claim
    assert certify(back).as_dict() == certify(d).as_dict()


def test_csv_round_trip():
    d = construct(MethodParams(11, n=26, k=6, sizes=(4, 4, 4, 4, 4, 6)))
    text = design_to_csv(d)
    assert text.splitlines()[0] == "block,attr1,attr2,attr3,attr4,attr5,attr6"
    back = design_from_csv(text)
    assert back.same_as(d)
    assert compute_info(back).entries == compute_info(d).entries


def test_csv_errors():
    with pytest.raises(ShapeError):
        design_from_csv("x,a\n1,2\n")
    with pytest.raises(LayoutError):
        design_from_csv("block,attr1\n1,2\n2,-2\n1,2\n")


def test_construct_pairs_matches_golden(capsys, golden):
    code, out, _ = run(capsys, "construct", "--method", "1", "--n", "18", "--k", "6", "--b", "9",
                       "--format", "pairs")
    assert code == 0
    assert out.split() == golden("method01_n18_k6_b9").split()


def test_construct_class_error(capsys):
    code, _, err = run(capsys, "construct", "--method", "1", "--n", "16", "--k", "6", "--b", "8")
    assert code == 2 and "N ≡ 2 (mod 4)" in err


def test_json_error_payload(capsys):
    code, out, _ = run(capsys, "construct", "--method", "1", "--n", "16", "--k", "6", "--b", "8", "--json")
    assert code == 2 and json.loads(out)["exit_code"] == 2


def test_unknown_subcommand(capsys):
    assert run(capsys, "bogus")[0] == 64
    assert run(capsys)[0] == 64


def test_hadamard_exit_codes(capsys):
    code, out, _ = run(capsys, "hadamard", "--order", "4")
    assert code == 0 and out.splitlines()[0] == "+ + + +"
    assert run(capsys, "hadamard", "--order", "92")[0] == 3
    code, out, _ = run(capsys, "hadamard", "--order", "12", "--json")
    assert json.loads(out)["verified"] is True


def test_oracle_command(capsys):
    code, out, err = run(capsys, "oracle", "--n", "6", "--k", "2", "--blocks", "2,2,2", "--criterion", "D", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["optimum"] == "32" and len(payload["witness"]) == 6
    assert "wall time" in err
    assert run(capsys, "oracle", "--n", "30", "--k", "6", "--blocks", "10,10,10")[0] == 4


def test_construct_verify_certify_round_trip(capsys, tmp_path):
    out_file = tmp_path / "m6.json"
    assert run(capsys, "construct", "--method", "6", "--n", "24", "--k", "6", "--format", "json",
               "-o", str(out_file))[0] == 0
    assert manifest_path(out_file).exists()
    manifest = json.loads(manifest_path(out_file).read_text())
    assert manifest["subcommand"] == "construct" and manifest["parameters"]["n"] == 24
    code, out, _ = run(capsys, "verify", str(out_file), "--json")
    payload = json.loads(out)
    assert code == 0 and payload["reconstruction_matches"]
    assert payload["info_matrix"] == compute_info(load_design(out_file)).to_strings()
    code, out, _ = run(capsys, "certify", str(out_file))
    assert json.loads(out) == json.loads(json.dumps(certify(load_design(out_file)).as_dict()))


def test_simulate_command(capsys, tmp_path):
    f = tmp_path / "m1.csv"
    run(capsys, "construct", "--method", "1", "--n", "18", "--k", "6", "--b", "9", "-o", str(f))
    code, out, _ = run(capsys, "simulate", "--design", str(f), "--beta", "1,2,3,4,5,1/2",
                       "--gamma", "1,1,1,1,1,1,1,1,9", "--sigma", "0")
    assert code == 0
    assert json.loads(out)["first_replication"]["beta_hat"] == ["1", "2", "3", "4", "5", "1/2"]


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog", "--json")
    assert code == 0 and len(json.loads(out)) == 27


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "pcbd", "catalog"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith(" 1")
