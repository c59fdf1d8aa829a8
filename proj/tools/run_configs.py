#!/usr/bin/env python3
"""Run shipped figure configs through the floquet CLI and report timings.

usage: run_configs.py [--bin build/floquet] [--out out] [config.json ...]
"""
import argparse
import json
import pathlib
import subprocess
import sys
import time

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bin", default=str(ROOT / "build" / "floquet"))
    ap.add_argument("--out", default="out", help="base directory for outputs")
    ap.add_argument("configs", nargs="*")
    args = ap.parse_args()
    configs = [pathlib.Path(c) for c in args.configs] or sorted((ROOT / "configs").glob("*.json"))

    failed = 0
    for cfg in configs:
        command = json.loads(cfg.read_text())["command"]
        out_dir = pathlib.Path(args.out) / cfg.stem
        t0 = time.monotonic()
        proc = subprocess.run([args.bin, command, "--config", str(cfg), "--out-dir", str(out_dir)],
                              capture_output=True, text=True)
        dt = time.monotonic() - t0
        status = "ok" if proc.returncode == 0 else f"exit {proc.returncode}"
        print(f"{cfg.stem:36s} {status:8s} {dt:7.1f} s", flush=True)
        if proc.returncode:
            failed += 1
            sys.stderr.write(proc.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
