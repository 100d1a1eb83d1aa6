"""Certify linear independence of admissible words through the Fock oracle.

Writes one JSON line per (n, k, m) with the basis size and the exact rank.
"""
import argparse
from dataclasses import dataclass, field

from parking_vertex.fockoracle import independence_certificate


@dataclass
class CertifyConfig:
    triples: list = field(
        default_factory=lambda: [(2, 2, 1), (3, 1, 1), (3, 2, 1), (3, 3, 1), (4, 1, 1), (4, 2, 1), (2, 1, 2), (3, 1, 2), (3, 2, 2)]
    )
    multilinear: bool = False


def parse_triple(text):
    n, k, m = (int(x) for x in text.split(","))
    return n, k, m


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("triples", nargs="*", type=parse_triple, help="n,k,m (default: a built-in list)")
    parser.add_argument("--multilinear", action="store_true")
    args = parser.parse_args()
    cfg = CertifyConfig(multilinear=args.multilinear)
    if args.triples:
        cfg.triples = args.triples
    failed = 0
    for n, k, m in cfg.triples:
        report = independence_certificate(n, k, m, multilinear=cfg.multilinear)
        failed += report.status != "pass"
        print(report.to_json(), flush=True)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
