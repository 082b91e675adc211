import pathlib

from gwreath.cli import run

INSTANCES = pathlib.Path(__file__).resolve().parent.parent / "instances"


def invoke(capsys, *argv):
    code = run([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_separable_instance(capsys):
    code, out, _ = invoke(capsys, "check", INSTANCES / "ex11.instance")
    assert code == 0
    assert out.startswith("RESIDUALLY FINITE")


def test_check_not_separable_instance(capsys):
    code, out, _ = invoke(capsys, "check", INSTANCES / "ex12.instance")
    assert code == 0  # certified either way
    assert out.startswith("NOT RESIDUALLY FINITE")
    assert "T3.1" in out


def test_check_unknown_exits_two(capsys, tmp_path):
    unknown = tmp_path / "unknown.instance"
    unknown.write_text(
        "[delta]\nkind = cyclic\norder = 2\n\n[gamma]\nkind = z\n\n"
        "[graph]\nmode = translation\norbits = c\nfamily = c c factorial 0\n"
    )
    code, out, _ = invoke(capsys, "check", unknown)
    assert code == 2
    assert out.startswith("UNKNOWN")


def test_check_structured_and_deterministic(capsys):
    code, first, _ = invoke(
        capsys, "check", INSTANCES / "ex13.instance", "--format", "structured"
    )
    assert code == 0
    code, second, _ = invoke(
        capsys, "check", INSTANCES / "ex13.instance", "--format", "structured"
    )
    assert first == second
    assert first.splitlines()[0] == "gwreath v1 verdict"
    assert "status not-residually-finite" in first


def test_check_wreath_flag(capsys):
    code, out, _ = invoke(capsys, "check", INSTANCES / "complete-s3.instance", "--wreath")
    assert code == 0
    assert out.startswith("NOT RESIDUALLY FINITE")


def test_check_wreath_flag_rejects_incomplete(capsys):
    code, _, err = invoke(capsys, "check", INSTANCES / "ex11.instance", "--wreath")
    assert code == 1
    assert "complete" in err


def test_check_fp(capsys):
    code, out, _ = invoke(capsys, "check-fp", INSTANCES / "ex11.instance")
    assert code == 0
    assert out.startswith("FINITELY PRESENTED")
    code, out, _ = invoke(capsys, "check-fp", INSTANCES / "ex12.instance")
    assert code == 0
    assert out.startswith("NOT FINITELY PRESENTED")


def test_normalize(capsys):
    code, out, _ = invoke(
        capsys, "normalize", INSTANCES / "ex11.instance", "--element", "w1"
    )
    assert code == 0
    assert "word: c:0=1 c:2=1" in out


def test_normalize_unknown_element(capsys):
    code, _, err = invoke(
        capsys, "normalize", INSTANCES / "ex11.instance", "--element", "nope"
    )
    assert code == 1
    assert "no element named" in err


def test_mul_and_invert(capsys):
    code, out, _ = invoke(
        capsys, "mul", INSTANCES / "ex11.instance", "--left", "w2", "--right", "w2"
    )
    assert code == 0
    assert "gamma: 2" in out
    code, out, _ = invoke(
        capsys, "invert", INSTANCES / "ex11.instance", "--element", "w2"
    )
    assert code == 0
    assert "gamma: -1" in out


def test_separate_certificate(capsys):
    code, out, _ = invoke(
        capsys, "separate", INSTANCES / "ex11.instance", "--element", "w1"
    )
    assert code == 0
    assert out.startswith("SEPARATED with modulus 4")


def test_separate_structured_round_trips(capsys):
    code, out, _ = invoke(
        capsys,
        "separate",
        INSTANCES / "ex11.instance",
        "--element",
        "w1",
        "--format",
        "structured",
    )
    assert code == 0
    from gwreath import formats, verify_certificate

    inst, _ = formats.load_instance(str(INSTANCES / "ex11.instance"))
    _, record = formats.parse_structured(out)
    rebuilt = formats.certificate_from_record(inst, record)
    assert verify_certificate(inst, rebuilt)


def test_separate_exhausted_exits_two(capsys):
    code, out, _ = invoke(
        capsys,
        "separate",
        INSTANCES / "ex11.instance",
        "--element",
        "t5",
        "--bound",
        "1",
    )
    assert code == 2
    assert "SEARCH EXHAUSTED" in out


def test_witness_command(capsys):
    code, out, _ = invoke(
        capsys,
        "witness",
        INSTANCES / "ex12.instance",
        "--kind",
        "T3.1",
        "--vertices",
        "c:0",
    )
    assert code == 0
    assert out.startswith("WITNESS T3.1")


def test_witness_not_certifiable_exits_two(capsys):
    code, out, _ = invoke(
        capsys,
        "witness",
        INSTANCES / "ex11.instance",
        "--kind",
        "T3.3",
        "--vertices",
        "c:0 c:3",
    )
    assert code == 2
    assert out.startswith("NO WITNESS")


def test_quotient_translation(capsys):
    code, out, _ = invoke(
        capsys,
        "quotient",
        INSTANCES / "ex11.instance",
        "--modulus",
        "3",
        "--format",
        "structured",
    )
    assert code == 0
    assert "quotient.edge c:0|c:1" in out


def test_quotient_finite_mode(capsys):
    code, out, _ = invoke(
        capsys,
        "quotient",
        INSTANCES / "finite5-s3.instance",
        "--subgroup",
        "1",
        "--format",
        "structured",
    )
    assert code == 0
    assert "quotient.loop 0" in out


def test_quotient_requires_modulus_for_translation(capsys):
    code, _, err = invoke(capsys, "quotient", INSTANCES / "ex11.instance")
    assert code == 1
    assert "--modulus" in err


def test_lef_command(capsys):
    code, out, _ = invoke(
        capsys,
        "lef",
        INSTANCES / "ex12.instance",
        "--gamma-set",
        "0,1",
        "--vertex-set",
        "c:0 c:1 c:2",
    )
    assert code == 0
    assert out.startswith("LEF MODEL with group of order 5")


def test_lef_structured_round_trips(capsys):
    code, out, _ = invoke(
        capsys,
        "lef",
        INSTANCES / "ex12.instance",
        "--gamma-set",
        "0,1",
        "--vertex-set",
        "c:0 c:1 c:2",
        "--format",
        "structured",
    )
    assert code == 0
    from gwreath import formats, verify_lef

    inst, _ = formats.load_instance(str(INSTANCES / "ex12.instance"))
    _, record = formats.parse_structured(out)
    rebuilt = formats.lef_from_record(inst.graph, record)
    assert verify_lef(rebuilt, inst.graph, [0, 1], [("c", 0), ("c", 1), ("c", 2)])


def test_missing_file_is_input_error(capsys):
    code, _, err = invoke(capsys, "check", "no-such-file.instance")
    assert code == 1
    assert "error" in err


def test_parse_error_names_line(capsys, tmp_path):
    bad = tmp_path / "bad.instance"
    bad.write_text("[delta]\nkind = cyclic\norder = 2\nbogus = 1\n")
    code, _, err = invoke(capsys, "check", bad)
    assert code == 1
    assert "line 4" in err


def test_output_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "out.txt"
    code, out, _ = invoke(
        capsys,
        "check",
        INSTANCES / "ex11.instance",
        "--output",
        target,
        "--format",
        "structured",
    )
    assert code == 0
    assert out == ""
    assert target.read_text().splitlines()[0] == "gwreath v1 verdict"
