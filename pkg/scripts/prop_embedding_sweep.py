"""Compare N(k,(k+1)^2) with N(k+1,k(k+1)) over a range of k, and report the
first index where the two capacity sequences differ and where they touch."""
import argparse
import time

from shapelift.echlattice import cap_sequence, closed_form_R, lattice_count, verify_prop_embedding


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=8)
    ap.add_argument("--horizon", type=int, default=2000, help="largest sequence index compared")
    args = ap.parse_args()

    print(f"{'k':>3} {'lattice':>8} {'seq<=':>6} {'ties':>6} {'first gap':>10} {'R(Ak(k+1)) ok':>14} {'sec':>6}")
    for k in range(1, args.kmax + 1):
        t0 = time.perf_counter()
        lattice = verify_prop_embedding(k, 30 * k * (k + 1))
        lhs = cap_sequence(k, (k + 1) ** 2, args.horizon).entries
        rhs = cap_sequence(k + 1, k * (k + 1), args.horizon).entries
        below = all(x <= y for x, y in zip(lhs, rhs))
        ties = sum(x == y for x, y in zip(lhs, rhs))
        gap = next((j for j, (x, y) in enumerate(zip(lhs, rhs)) if x != y), None)
        closed = all(closed_form_R(k, A) == lattice_count(k, (k + 1) ** 2, A * k * (k + 1))
                     == lattice_count(k + 1, k * (k + 1), A * k * (k + 1)) for A in range(13))
        dt = time.perf_counter() - t0
        print(f"{k:>3} {str(lattice):>8} {str(below):>6} {ties:>6} {str(gap):>10} {str(closed):>14} {dt:>6.2f}")


if __name__ == "__main__":
    main()
