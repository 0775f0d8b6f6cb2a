"""
Integration tests for the ``qc`` command-line tool against golden output.
"""

import logging
from pathlib import Path

import pytest

from qcalc.scripts.qc import LevelFormatter, main
from qcalc.system.parser import parse_system

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *args) -> str:
    main([str(arg) for arg in args])
    return capsys.readouterr().out


def exit_code(*args) -> int:
    with pytest.raises(SystemExit) as error:
        main([str(arg) for arg in args])
    return error.value.code


@pytest.mark.parametrize(
    "golden, args",
    [
        ("kinematics_info", ["info", "kinematics.qc"]),
        ("mechanics_info", ["info", "mechanics.qc"]),
        ("kinematics_check", ["check", "kinematics.qc", "c"]),
        ("kinematics_eval", ["eval", "kinematics.qc", "c"]),
        ("kinematics_eval_product", ["eval", "kinematics.qc", "(2 m)(3 s^-1)"]),
        ("kinematics_eval_speed", ["eval", "kinematics.qc", "1 km h^-1"]),
        ("kinematics_convert", ["convert", "kinematics.qc", "1 km h^-1", "--to", "m s^-1"]),
        ("mechanics_check", ["check", "mechanics.qc", "N m"]),
        ("mechanics_eval", ["eval", "mechanics.qc", "1 g"]),
        ("mechanics_convert", ["convert", "mechanics.qc", "1 J", "--to", "N m"]),
    ],
)
def test_golden_output(capsys, examples, golden, args):
    args = [args[0], examples / args[1], *args[2:]]

    assert run(capsys, *args) == (GOLDEN / f"{golden}.txt").read_text()


def test_info_for_other_ranks(capsys, examples):
    assert "rank 7\n" in run(capsys, "info", examples / "isq.qc")

    output = run(capsys, "info", examples / "dimensionless.qc")
    assert "rank 0\n" in output
    assert "dimensions (none)\n" in output
    assert "  half: 1 = 1/2 (~0.5)\n" in output


def test_convert_unit_to_itself(capsys, examples):
    output = run(capsys, "convert", examples / "kinematics.qc", "km", "--to", "km")
    assert output == "km = 1 [km]\n"


def test_dimension_errors_exit_1(caplog, examples):
    assert exit_code("check", examples / "kinematics.qc", "3 m + 2 s") == 1
    assert "quantities have different dimensions: L vs T" in caplog.text

    assert exit_code("convert", examples / "kinematics.qc", "1 m", "--to", "s") == 1


def test_parse_errors_exit_2(examples, tmp_path):
    assert exit_code("eval", examples / "kinematics.qc", "3 q") == 2
    assert exit_code("eval", examples / "kinematics.qc", "2 m^(1/2)") == 2
    assert exit_code("info", tmp_path / "missing.qc") == 2

    broken = tmp_path / "broken.qc"
    broken.write_text("dimension L\nunit m : L\nunit m : L = 2 m\n")
    assert exit_code("info", broken) == 2


def test_torsion_exits_3(caplog, examples):
    assert exit_code("reduce", examples / "physics.qc", "--kill", "c,h,G,k_C,k_B") == 3
    assert "invariant factors [2, 2]" in caplog.text


def test_conflicting_constants_exit_3(tmp_path):
    system = tmp_path / "conflict.qc"
    system.write_text(
        "dimension L\ndimension T\nunit m : L\nunit s : T\n"
        "constant v = 3 m s^-1\nconstant w = 4 m s^-1\n"
    )

    assert exit_code("reduce", system, "--kill", "v,w") == 3


def test_reduce_kinematics(capsys, examples):
    output = run(capsys, "reduce", examples / "kinematics.qc", "--kill", "c")
    report, _, text = output.partition("\n\n")

    assert report.splitlines() == [
        "quotient of kinematics by c",
        "rank 2 -> 1",
        "dimension classes",
        "  L -> T",
        "  T -> T",
        "constants",
        "  c -> 1",
    ]

    reduced = parse_system(text)
    assert reduced.rank == 1
    assert reduced.quantity("c") == reduced.space.one()
    assert reduced.quantity("km").value * 299792458 == 1000
    assert reduced.quantity("s") == reduced.space.quantity(1, reduced.space.dimension(T=1))


def test_reduce_writes_the_quotient_system(capsys, examples, tmp_path):
    out = tmp_path / "natural.qc"
    output = run(capsys, "reduce", examples / "kinematics.qc", "--kill", "c", "--out", out)

    assert output.startswith("quotient of kinematics by c\n")
    assert output.endswith(f"Wrote {out}\n")
    assert parse_system(out.read_text()).name == "kinematics_natural"


def test_reduce_by_nothing(capsys, examples):
    output = run(capsys, "reduce", examples / "kinematics.qc")

    assert "rank 2 -> 2\n" in output
    assert "  L -> L\n" in output


@pytest.mark.parametrize(
    "first, second, expected",
    [
        ("geometry", "time", "isomorphic (rank 1)\n  L -> T\n"),
        ("kinematics", "mechanics", "not isomorphic (rank 2 vs rank 3)\n"),
        ("kinematics", "kinematics", "isomorphic (rank 2)\n  L -> L\n  T -> T\n"),
    ],
)
def test_iso(capsys, examples, first, second, expected):
    assert run(capsys, "iso", examples / f"{first}.qc", examples / f"{second}.qc") == expected


def test_level_formatter():
    record = logging.LogRecord("qcalc", logging.ERROR, __file__, 1, "broken %s", ("file",), None)

    assert LevelFormatter().format(record) == "error: broken file"
    assert LevelFormatter(color=True).format(record) == "\033[31merror\033[0m: broken file"
