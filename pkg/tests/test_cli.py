"""CLI contract tests: examples, determinism, exit codes, schemas."""

import json

import jsonschema

from dirac_atlas.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION, SCHEMAS, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == EXIT_OK, err
    return json.loads(out)


def test_enumerate_sl2c_empty(capsys):
    payload = run_json(capsys, "ds", "enumerate", "--pair", "sl2c", "--bound", "100")
    assert payload["count"] == 0 and payload["parameters"] == []
    jsonschema.validate(payload, SCHEMAS["ds.enumerate"])


def test_induct_sl2r_three_halves(capsys):
    payload = run_json(capsys, "ds", "induct", "--pair", "sl2r", "--hw", "3/2")
    assert payload["ok"] is True
    assert payload["parameter"]["formal_degree"] == "3/2"
    jsonschema.validate(payload, SCHEMAS["ds.induct"])


def test_rootsys_info_g2(capsys):
    payload = run_json(capsys, "rootsys", "info", "G2")
    assert payload["num_positive_roots"] == 6
    assert len(payload["rootsys"]["positive_roots"]) == 6
    jsonschema.validate(payload, SCHEMAS["rootsys.info"])


def test_byte_identical_invocations(capsys):
    _, out1, _ = run_cli(capsys, "ds", "enumerate", "--pair", "su21", "--bound", "25")
    _, out2, _ = run_cli(capsys, "ds", "enumerate", "--pair", "su21", "--bound", "25")
    assert out1 == out2
    _, out3, _ = run_cli(capsys, "group", "wedderburn", "--name", "s3", "--seed", "0")
    _, out4, _ = run_cli(capsys, "group", "wedderburn", "--name", "s3", "--seed", "0")
    assert out3 == out4


def test_unknown_pair_is_validation_error(capsys):
    code, _, err = run_cli(capsys, "ds", "induct", "--pair", "nope", "--hw", "1")
    assert code == EXIT_VALIDATION
    assert "unknown pair" in err


def test_seed_required_for_randomized_subcommands(capsys, tmp_path):
    code, _, err = run_cli(capsys, "group", "wedderburn", "--name", "s3")
    assert code == EXIT_VALIDATION
    assert "--seed" in err
    f = tmp_path / "f.json"
    f.write_text(json.dumps([{"g": [0], "re": 1.0, "im": 0.0}]))
    code, _, err = run_cli(
        capsys, "rd", "probe-rd", "--group", "z", "--s", "1", "--samples", "2"
    )
    assert code == EXIT_VALIDATION


def test_seed_via_config_is_accepted(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 0}))
    payload = run_json(
        capsys, "group", "wedderburn", "--name", "s3", "--config", str(cfg)
    )
    assert payload["blocks"] == [1, 1, 2]
    jsonschema.validate(payload, SCHEMAS["group.wedderburn"])


def test_config_unknown_key_rejected(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"sneaky": True}))
    code, _, err = run_cli(capsys, "rootsys", "info", "A1", "--config", str(cfg))
    assert code == EXIT_VALIDATION
    assert "unknown config keys" in err


def test_numerical_ambiguity_exit_code(capsys, tmp_path):
    # loosening the idempotency tolerance exposes the spectral gap test
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"blocks": [1], "matrices": [[[0.5]]]}))
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tol": 1.0}))
    code, _, err = run_cli(
        capsys, "k0", "class", "--spec", str(spec), "--config", str(cfg)
    )
    assert code == EXIT_NUMERICAL
    assert "ambig" in err.lower()


def test_k0_class_exact_and_float(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(
        json.dumps(
            {"blocks": [2], "matrices": [[["1/2", "1/2"], ["1/2", "1/2"]]]}
        )
    )
    payload = run_json(capsys, "k0", "class", "--spec", str(spec))
    assert payload == {"blocks": [2], "ranks": [1], "exact": True}
    jsonschema.validate(payload, SCHEMAS["k0.class"])
    spec.write_text(
        json.dumps({"blocks": [1, 2], "matrices": [[[1.0]], [[0.0, 0.0], [0.0, 0.0]]]})
    )
    payload = run_json(capsys, "k0", "class", "--spec", str(spec))
    assert payload["ranks"] == [1, 0] and payload["exact"] is False


def test_k0_index_cli(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(
        json.dumps(
            {
                "blocks": [1],
                "e0": [3],
                "e1": [2],
                "u": [[[0, 0, 0], [0, 0, 0]]],
            }
        )
    )
    payload = run_json(capsys, "k0", "index", "--spec", str(spec))
    assert payload["index"] == [1] and payload["agree"] is True
    jsonschema.validate(payload, SCHEMAS["k0.index"])


def test_spin_info(capsys):
    payload = run_json(capsys, "spin", "info", "--pair", "su21")
    assert payload["dim_s_plus"] == 2 and payload["dim_s_minus"] == 2
    assert payload["lifts_on_double_cover"] is True
    jsonschema.validate(payload, SCHEMAS["spin.info"])
    payload = run_json(capsys, "spin", "info", "--pair", "sl2c")
    assert payload["equal_rank"] is False and payload["dim_s_plus"] is None
    jsonschema.validate(payload, SCHEMAS["spin.info"])


def test_rep_commands(capsys):
    payload = run_json(capsys, "rep", "irr", "--type", "A2", "--hw", "1,1")
    assert payload["dimension"] == 8 and payload["weyl_dimension"] == "8"
    jsonschema.validate(payload, SCHEMAS["rep.irr"])
    payload = run_json(
        capsys, "rep", "tensor", "--type", "A1", "--hw", "1", "--hw2", "1"
    )
    assert payload["decomposition"] == [
        {"weight": ["0"], "mult": 1},
        {"weight": ["2"], "mult": 1},
    ]
    jsonschema.validate(payload, SCHEMAS["rep.tensor"])


def test_group_idempotent_cli(capsys):
    payload = run_json(
        capsys, "group", "idempotent", "--name", "s3", "--block", "2", "--seed", "0"
    )
    assert payload["block_dimension"] == 2
    assert payload["idempotency_error"] <= 1e-9
    assert payload["k0_class"] == [0, 0, 1]
    jsonschema.validate(payload, SCHEMAS["group.idempotent"])


def test_rd_cli_commands(capsys, tmp_path):
    f = tmp_path / "f.json"
    f.write_text(
        json.dumps(
            [
                {"g": [0], "re": 1.0, "im": 0.0},
                {"g": [1], "re": 1.0, "im": 0.0},
                {"g": [2], "re": 1.0, "im": 0.0},
            ]
        )
    )
    payload = run_json(
        capsys,
        "rd", "norms", "--group", "z", "--s", "1", "--input", str(f), "--radius", "30",
    )
    assert payload["l1"] == 3.0
    assert payload["red_lower"] <= payload["red_upper"] == 3.0
    jsonschema.validate(payload, SCHEMAS["rd.norms"])
    payload = run_json(
        capsys,
        "rd", "probe-unconditional", "--group", "z", "--norm", "l1",
        "--input", str(f), "--trials", "10", "--seed", "1",
    )
    assert payload["max_deviation"] <= 1e-12
    jsonschema.validate(payload, SCHEMAS["rd.probe-unconditional"])
    payload = run_json(
        capsys,
        "rd", "probe-rd", "--group", "z", "--s", "1", "--samples", "3", "--seed", "2",
    )
    assert payload["max_ratio"] > 0
    jsonschema.validate(payload, SCHEMAS["rd.probe-rd"])


def test_schema_flag(capsys):
    code, out, _ = run_cli(capsys, "ds", "enumerate", "--pair", "sl2r", "--bound", "1", "--schema")
    assert code == EXIT_OK
    assert json.loads(out) == SCHEMAS["ds.enumerate"]


def test_table_format(capsys):
    code, out, _ = run_cli(capsys, "rootsys", "info", "A1", "--format", "table")
    assert code == EXIT_OK
    assert "num_positive_roots: 1" in out


def test_custom_catalog_flag(capsys, tmp_path):
    cat = tmp_path / "cat.json"
    cat.write_text(
        json.dumps(
            {"version": 1, "pairs": {"only": {"cartan": "A1", "compact": "all"}}}
        )
    )
    payload = run_json(
        capsys, "spin", "info", "--pair", "only", "--catalog", str(cat)
    )
    assert payload["pair"] == "only"
    code, _, err = run_cli(capsys, "spin", "info", "--pair", "sl2r", "--catalog", str(cat))
    assert code == EXIT_VALIDATION


def test_weight_denominators_restricted_to_powers_of_two(capsys):
    code, _, err = run_cli(capsys, "ds", "induct", "--pair", "sl2r", "--hw", "1/3")
    assert code == EXIT_VALIDATION
    assert "powers of 2" in err
    payload = run_json(capsys, "ds", "induct", "--pair", "sl2r", "--hw", "5/4")
    assert payload["parameter"]["formal_degree"] == "5/4"


def test_rd_norms_free_group(capsys, tmp_path):
    f = tmp_path / "f.json"
    f.write_text(
        json.dumps(
            [
                {"g": [], "re": 1.0, "im": 0.0},
                {"g": [1], "re": 1.0, "im": 0.0},
                {"g": [2], "re": 1.0, "im": 0.0},
            ]
        )
    )
    payload = run_json(
        capsys,
        "rd", "norms", "--group", "f2", "--s", "2", "--input", str(f), "--radius", "8",
    )
    assert payload["l1"] == 3.0
    assert payload["red_lower"] <= 3.0 + 1e-9
    jsonschema.validate(payload, SCHEMAS["rd.norms"])


def test_probe_unconditional_default_input(capsys):
    # the documented invocation works without an input file
    payload = run_json(capsys, "rd", "probe-unconditional", "--group", "z", "--seed", "42")
    assert payload["trials"] == 100 and payload["seed"] == 42
    assert payload["base_value"] > 0
    jsonschema.validate(payload, SCHEMAS["rd.probe-unconditional"])


def test_group_table_ingestion(capsys, tmp_path):
    from dirac_atlas.ktheory import symmetric_table

    table = tmp_path / "table.json"
    table.write_text(json.dumps(symmetric_table(3).tolist()))
    payload = run_json(
        capsys, "group", "wedderburn", "--table", str(table), "--seed", "0"
    )
    assert payload["blocks"] == [1, 1, 2] and payload["order"] == 6


def test_catalog_env_var(capsys, tmp_path, monkeypatch):
    from dirac_atlas.spinmod import CATALOG_ENV_VAR

    cat = tmp_path / "envcat.json"
    cat.write_text(
        json.dumps({"version": 1, "pairs": {"envpair": {"cartan": "A1", "compact": "all"}}})
    )
    monkeypatch.setenv(CATALOG_ENV_VAR, str(cat))
    payload = run_json(capsys, "spin", "info", "--pair", "envpair")
    assert payload["pair"] == "envpair"


def test_degree_roots_flag(capsys):
    payload = run_json(
        capsys,
        "ds", "induct", "--pair", "compact_a2", "--hw", "1,0", "--degree-roots", "simple",
    )
    assert payload["parameter"]["formal_degree"] == "2"
    payload = run_json(
        capsys, "ds", "induct", "--pair", "compact_a2", "--hw", "1,0"
    )
    assert payload["parameter"]["formal_degree"] == "3"
