import subprocess
import sys
from fractions import Fraction

import pytest

from sscert import documents
from sscert.branching import CertifyStatus, coverage_stats, enumerate_intervals
from sscert.cli import RunConfig, main, run
from sscert.decompose import Decomposition, Method
from sscert.lll import ReductionStats
from sscert.model import Instance

TOY = Instance(n=3, a=(100, 101, 102))


def toy_decomposition():
    return Decomposition(
        v=(1, 1, 1),
        scale=Fraction(101),
        residual=(Fraction(-1), Fraction(0), Fraction(1)),
        method=Method.LLL_ROWS,
        provenance=ReductionStats(dim=3, swaps=0, size_reductions=0),
        bounds=(),
    )


@pytest.fixture
def toy_files(tmp_path):
    inst_path = tmp_path / "instance.json"
    dec_path = tmp_path / "decomposition.json"
    inst_path.write_text(documents.serialize_instance(TOY))
    dec_path.write_text(documents.serialize_decomposition(toy_decomposition()))
    return tmp_path, str(inst_path), str(dec_path)


def test_generate_deterministic_bytes(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["generate", "--n", "4", "--seed", "11", "-o", str(out1)]) == 0
    assert main(["generate", "--n", "4", "--seed", "11", "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    inst, _ = documents.parse_instance(out1.read_text())
    assert inst.n == 4 and inst.seed == 11


def test_generate_usage_error():
    assert run(RunConfig(command="generate", n=1, seed="0")) == 2


def test_certify_verify_happy_path(toy_files):
    tmp_path, inst_path, dec_path = toy_files
    cert_path = tmp_path / "cert.json"
    code = main([
        "certify", "--instance", inst_path, "--decomposition", dec_path,
        "--beta", "150", "-o", str(cert_path),
    ])
    assert code == 0
    cert, v = documents.parse_certificate(cert_path.read_text())
    assert cert.beta == 150 and v == (1, 1, 1)
    assert main(["verify", "--instance", inst_path, "--certificate", str(cert_path)]) == 0

    tampered = tmp_path / "tampered.json"
    tampered.write_text(cert_path.read_text().replace('"beta": "150"', '"beta": "102"'))
    assert main(["verify", "--instance", inst_path, "--certificate", str(tampered)]) == 1

    mangled = tmp_path / "mangled.json"
    mangled.write_text(cert_path.read_text().replace('"ell": "1"', '"ell": "2"'))
    assert main(["verify", "--instance", inst_path, "--certificate", str(mangled)]) == 1


def test_certify_statuses(toy_files, capsys):
    _, inst_path, dec_path = toy_files
    base = ["certify", "--instance", inst_path, "--decomposition", dec_path]
    assert main(base + ["--beta", "101"]) == 1
    status, beta = documents.parse_certify_status(capsys.readouterr().out)
    assert status is CertifyStatus.NO_CERTIFICATE and beta == 101

    assert main(base + ["--beta", "-1"]) == 0
    status, beta = documents.parse_certify_status(capsys.readouterr().out)
    assert status is CertifyStatus.TRIVIALLY_INFEASIBLE and beta == -1


def test_intervals_matches_library(toy_files, capsys):
    _, inst_path, dec_path = toy_files
    assert main(["intervals", "--instance", inst_path, "--decomposition", dec_path]) == 0
    cover = documents.parse_interval_cover(capsys.readouterr().out)
    dec = toy_decomposition()
    assert cover == enumerate_intervals(TOY.a, dec.v, dec.scale, dec.residual)


def test_intervals_capacity(toy_files):
    _, inst_path, dec_path = toy_files
    code = main([
        "intervals", "--instance", inst_path, "--decomposition", dec_path, "--cap", "1",
    ])
    assert code == 3


def test_stats_exact_and_sampled(toy_files, capsys):
    _, inst_path, dec_path = toy_files
    assert main(["stats", "--instance", inst_path, "--decomposition", dec_path]) == 0
    stats = documents.parse_coverage_stats(capsys.readouterr().out)
    dec = toy_decomposition()
    assert stats == coverage_stats(TOY.a, dec.v, dec.scale, dec.residual, "exact")

    assert main([
        "stats", "--instance", inst_path, "--decomposition", dec_path,
        "--mode", "sampled", "--sample-size", "60", "--seed", "4",
    ]) == 0
    sampled = documents.parse_coverage_stats(capsys.readouterr().out)
    assert sampled.sample_size == 60 and sampled.g + sampled.b == 60

    # sampled mode without a seed is a usage error
    assert main([
        "stats", "--instance", inst_path, "--decomposition", dec_path,
        "--mode", "sampled",
    ]) == 2

    # worker count must not change the result
    assert main([
        "stats", "--instance", inst_path, "--decomposition", dec_path,
        "--mode", "sampled", "--sample-size", "60", "--seed", "4",
        "--workers", "2",
    ]) == 0
    assert documents.parse_coverage_stats(capsys.readouterr().out) == sampled


def test_cor1_exact(toy_files, capsys):
    _, inst_path, dec_path = toy_files
    assert main(["cor1", "--instance", inst_path, "--decomposition", dec_path]) == 0
    report = documents.parse_infeasible_coverage(capsys.readouterr().out)
    assert report.infeasible_count == 296
    assert report.fraction == 1


def test_normalize_gcd_flow(tmp_path, capsys):
    inst_path = tmp_path / "inst.json"
    dec_path = tmp_path / "dec.json"
    inst_path.write_text(
        '{"a": ["2", "4", "6"], "kind": "instance", "n": 3}\n'
    )
    dec = Decomposition(
        v=(1, 2, 3),
        scale=Fraction(1),
        residual=(Fraction(0),) * 3,
        method=Method.LLL_ROWS,
        provenance=ReductionStats(dim=3, swaps=0, size_reductions=0),
        bounds=(),
    )
    dec_path.write_text(documents.serialize_decomposition(dec))

    base = ["certify", "--instance", str(inst_path), "--decomposition", str(dec_path)]
    assert main(base + ["--beta", "4"]) == 2  # not coprime without the flag
    capsys.readouterr()

    assert main(base + ["--beta", "3", "--normalize-gcd"]) == 0
    status, _ = documents.parse_certify_status(capsys.readouterr().out)
    assert status is CertifyStatus.TRIVIALLY_INFEASIBLE_GCD

    code = main(base + ["--beta", "4", "--normalize-gcd"])
    out = capsys.readouterr().out
    assert code in (0, 1)
    assert documents.document_kind(out) in ("certificate", "certify_status")


def test_decomposition_instance_mismatch(toy_files, tmp_path):
    _, inst_path, dec_path = toy_files
    other = tmp_path / "other.json"
    other.write_text(documents.serialize_instance(Instance(n=3, a=(3, 5, 7))))
    assert main([
        "certify", "--instance", str(other), "--decomposition", dec_path,
        "--beta", "5",
    ]) == 2


def test_end_to_end_pipeline(tmp_path):
    inst_path = tmp_path / "inst.json"
    dec_path = tmp_path / "dec.json"
    cert_path = tmp_path / "cert.json"
    assert main(["generate", "--n", "10", "--seed", "42", "-o", str(inst_path)]) == 0
    assert main([
        "decompose", "--instance", str(inst_path), "-o", str(dec_path),
    ]) == 0
    # decompose output is byte-deterministic
    dec_path2 = tmp_path / "dec2.json"
    assert main([
        "decompose", "--instance", str(inst_path), "-o", str(dec_path2),
    ]) == 0
    assert dec_path.read_bytes() == dec_path2.read_bytes()

    inst, _ = documents.parse_instance(inst_path.read_text())
    # a mid-range right-hand side; overwhelmingly in a good interval
    beta = sum(inst.a) // 3
    code = main([
        "certify", "--instance", str(inst_path), "--decomposition", str(dec_path),
        "--beta", str(beta), "-o", str(cert_path),
    ])
    assert code == 0
    assert main([
        "verify", "--instance", str(inst_path), "--certificate", str(cert_path),
    ]) == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sscert", "generate", "--n", "3", "--seed", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    inst, _ = documents.parse_instance(proc.stdout)
    assert inst.n == 3
