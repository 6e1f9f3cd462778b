"""Rebuild the small end of the length tables and print them side by side.

Runs the leximatrix and inverse-leximatrix algorithms for every field
order up to Q_MAX, verifies each code, and prints q, both lengths, the
bound coefficient c with n = c (q^{r-3} ln q)^{1/3}, and the covering
density.  With the default Q_MAX this takes well under a minute.
"""

from lexicov import field_for_order, invleximatrix, leximatrix, verify_code
from lexicov.report import CodeRecord, coefficient

Q_MAX = 23
ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23]


def main() -> None:
    print(f"{'q':>4} {'lexi n':>7} {'invlexi n':>10} {'c':>8} "
          f"{'density':>10}  classification")
    for q in (v for v in ORDERS if v <= Q_MAX):
        f = field_for_order(q)
        lex = leximatrix(f, 4, 3)
        inv = invleximatrix(f, 4, 3) if q >= 7 else None
        rep = verify_code(lex)
        c = coefficient(CodeRecord(q=q, r=4, R=3, n=lex.n)).c
        inv_n = "-" if inv is None else str(inv.n)
        mark = " <- inverse scan wins" if inv and inv.n < lex.n else ""
        print(f"{q:>4} {lex.n:>7} {inv_n:>10} {c:>8.4f} "
              f"{float(rep.density):>10.4f}  {rep.classification}{mark}")


if __name__ == "__main__":
    main()
