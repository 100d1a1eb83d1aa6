"""Print basis sizes of Q_n(k) next to the closed-form counts they should match."""
import argparse
from dataclasses import dataclass

from parking_vertex.combinatorics import enumerate_admissible_sequences, fuss_catalan, parking_function_count


@dataclass
class TableConfig:
    n_max: int = 6
    m_values: tuple = (1, 2, 3)


def rows(cfg):
    for m in cfg.m_values:
        for n in range(1, cfg.n_max + 1):
            single = len(enumerate_admissible_sequences(n, 1, m))
            multi = len(enumerate_admissible_sequences(n, n, m, multilinear=True)) if n <= 5 else None
            yield m, n, single, fuss_catalan(n, m), multi, parking_function_count(n, m)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=TableConfig.n_max)
    parser.add_argument("--m", type=int, nargs="+", default=list(TableConfig.m_values))
    args = parser.parse_args()
    cfg = TableConfig(args.n_max, tuple(args.m))
    print(f"{'m':>2} {'n':>2} {'k=1 basis':>10} {'Fuss-Catalan':>13} {'multilinear':>12} {'(mn+1)^(n-1)':>13}")
    for m, n, single, fc, multi, pf in rows(cfg):
        multi_text = "-" if multi is None else str(multi)
        print(f"{m:>2} {n:>2} {single:>10} {fc:>13} {multi_text:>12} {pf:>13}")


if __name__ == "__main__":
    main()
