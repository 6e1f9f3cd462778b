"""How the first leximatrix columns stop depending on q.

For prime q and r=4, the determinant-based prefix scanner computes the
first columns of the leximatrix without touching the full coverage
bitmap, which keeps four-digit q cheap.  As q grows, each column
position settles on a fixed value; the script prints, for each of the
first K positions, that stable column and the least tested prime from
which it holds.
"""

from lexicov import stable_prefix

K = 12
PRIMES = [101, 127, 151, 199, 251, 401, 601, 1009, 1399]


def main() -> None:
    rows = stable_prefix(4, 3, K, primes=PRIMES)
    print(f"first {K} leximatrix columns across primes {PRIMES[0]}..{PRIMES[-1]}")
    print(f"{'v':>3}  {'column':<20} {'stable from':>12}  matches reference")
    for row in rows:
        col = " ".join(str(t) for t in row.column)
        print(f"{row.v:>3}  {col:<20} {row.q0_estimate:>12}  {row.matches_reference}")


if __name__ == "__main__":
    main()
