#!/usr/bin/env python3
# Copyright (c) 2026 The upw developers
# Distributed under the MIT software license, see the accompanying
# file COPYING or http://www.opensource.org/licenses/mit-license.php.
"""End-to-end checks of the upw CLI: roundtrip, exit codes, determinism."""

import json
import os
import subprocess
import sys
import tempfile

UPW = sys.argv[1]


def run(*args, expect=0, env_extra=None):
    env = dict(os.environ)
    env.pop("UPW_SEED", None)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run([UPW, *args], capture_output=True, text=True, env=env)
    if proc.returncode != expect:
        raise SystemExit(
            f"FAIL: {' '.join(args)} -> exit {proc.returncode} (wanted {expect})\n"
            f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc.stdout


def main():
    tmp = tempfile.mkdtemp(prefix="upw-cli-")
    os.chdir(tmp)

    # encode -> decode roundtrip is byte-identical
    src = os.urandom(2000)
    with open("src.bin", "wb") as fh:
        fh.write(src)
    run("encode", "--input", "src.bin", "--id", "n1", "--difficulty", "4",
        "--out", "rep.upw")
    run("decode", "--input", "rep.upw", "--out", "back.bin")
    with open("back.bin", "rb") as fh:
        assert fh.read() == src, "roundtrip mismatch"
    assert os.path.exists("rep.upw.config.json"), "missing run config"

    # identical seed + args => identical artifacts
    run("encode", "--input", "src.bin", "--id", "n1", "--difficulty", "4",
        "--out", "rep2.upw")
    assert open("rep.upw", "rb").read() == open("rep2.upw", "rb").read(), \
        "encode artifacts differ across identical runs"

    # follow-chain mode survives the roundtrip too
    run("encode", "--input", "src.bin", "--id", "n1", "--difficulty", "2",
        "--segment-every", "700", "--out", "rep3.upw")
    run("decode", "--input", "rep3.upw", "--out", "back3.bin")
    assert open("back3.bin", "rb").read() == src

    # UPW_SEED overrides --seed (different feed => different replica file)
    run("encode", "--input", "src.bin", "--id", "n1", "--difficulty", "2",
        "--segment-every", "700", "--out", "rep4.upw", "--seed", "1",
        env_extra={"UPW_SEED": "99"})
    assert open("rep4.upw", "rb").read() != open("rep3.upw", "rb").read(), \
        "UPW_SEED had no effect"

    # unknown flag is a usage error
    run("encode", "--nonsense", expect=2)

    # bench CSV: 8 rows, hash ratio column non-decreasing in L
    out = run("bench-encoding", "--difficulty", "1..8", "--size", "2048",
              "--out", "bench")
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert len(rows) == 8, f"expected 8 rows, got {len(rows)}"
    ratios = [float(r[5]) for r in rows]
    assert all(b >= a for a, b in zip(ratios, ratios[1:])), \
        f"hash ratio not monotone: {ratios}"
    decode_hashes = [int(r[4]) for r in rows]
    for row, dec in zip(rows, decode_hashes):
        L = int(row[0])
        assert dec == (2048 * 8 + L - 1) // L, "decode hashes != symbol count"

    # challenge at L=8 (so the c=16 deadline sits far under the 2^8 re-seal
    # cost): honest passes (exit 0), cheater fails (exit 1)
    run("encode", "--input", "src.bin", "--id", "n1", "--difficulty", "8",
        "--out", "rep8.upw")
    run("challenge", "--replica", "rep8.upw", "--source", "src.bin", "--q", "8",
        "--out", "ch-honest")
    run("challenge", "--replica", "rep8.upw", "--source", "src.bin", "--q", "8",
        "--prover", "source-only", "--out", "ch-cheat", expect=1)
    verdict = json.load(open("ch-cheat/verdict.json"))
    assert verdict["verdict"] == "fail(DeadlineExceeded)", verdict

    # storage-sim determinism: identical seeds, identical event logs
    cfg = {
        "seed": 5, "providers": 3, "nodes": 3, "difficulty_L": 2, "q": 8,
        "epochs": 2, "chunk_size": 512, "file_bytes": 1024, "replication": 2,
        "prepay": 100000, "price_per_byte_epoch": {"num": 1, "den": 512},
    }
    with open("sim.json", "w") as fh:
        json.dump(cfg, fh)
    run("storage-sim", "--config", "sim.json", "--out", "s1")
    run("storage-sim", "--config", "sim.json", "--out", "s2")
    assert open("s1/events.log").read() == open("s2/events.log").read(), \
        "storage-sim event logs differ across identical runs"
    assert open("s1/ledger.csv").read() == open("s2/ledger.csv").read()

    # chain-demo runs and exports a state snapshot
    run("chain-demo", "--out", "demo")
    assert os.path.getsize("demo/state.txt") > 0

    print("cli tests ok")


if __name__ == "__main__":
    main()
