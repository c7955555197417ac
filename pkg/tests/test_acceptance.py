"""All eleven acceptance checks; each prints one PASS/FAIL line."""

import subprocess
import sys

import pytest

from gammapres.acceptance import CHECKS, DEFAULT_SEED, run_check


@pytest.mark.parametrize("cid", [c[0] for c in CHECKS], ids=[f"{c[0]:02d}-{c[1]}" for c in CHECKS])
def test_check(cid, capsys):
    r = run_check(cid, DEFAULT_SEED)
    with capsys.disabled():
        print(f"\n{r.line()}")
    assert r.passed, r.details


def test_selftest_bundles_are_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"bundle{i}.json"
        proc = subprocess.run([sys.executable, "-m", "gammapres", "selftest", "--seed", "11",
                               "--out", str(path)], capture_output=True, text=True, timeout=900)
        assert proc.returncode == 0, proc.stderr
        assert proc.stderr.count("PASS") == 11
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
