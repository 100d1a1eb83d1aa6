"""Check the exchange relations of the vertex operators over a grid of settings.

Each line reports the number of (vector, p, q, i, j) cases checked and the
wall time; the first failing case is printed if there is one.
"""
import argparse
import json
from dataclasses import dataclass

from parking_vertex.verify import verify_relations


@dataclass
class SweepConfig:
    k_max: int = 3
    m_max: int = 2
    depth: int = 4
    modes: int = 3
    threads: int = 1


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(SweepConfig()).items():
        parser.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = SweepConfig(**vars(parser.parse_args()))
    for m in range(1, cfg.m_max + 1):
        for k in range(1, cfg.k_max + 1):
            report = verify_relations(k, m, cfg.depth, cfg.modes, cfg.threads, timeout=None)
            case = report.cases[0]
            line = f"k={k} m={m} depth<={cfg.depth} checked={case['checked']:>7} {report.status} {report.elapsed_ms / 1000:.1f} s"
            print(line, flush=True)
            if not report.passed:
                print("  " + json.dumps(case["counterexample"]))


if __name__ == "__main__":
    main()
