#!/usr/bin/env python3
"""Regenerates the degree-8 table-kind field files under tests/fixtures/.

The pair Q(x^8 = -15) and Q(x^8 = -240) has equal Dedekind zeta functions
but different class numbers. The data below is produced with PARI/GP
(bnfinit + bnfcertify) and is consumed verbatim by the table ingestion path.

Usage: python3 gen_arith_equivalent_pair.py <out_dir> [bound]
"""
import sys

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)


def write_field(path, name, pol, bound):
    bnf = pari(f"bnfinit({pol}, 1)")
    certified = int(pari.bnfcertify(bnf)) == 1
    cyc = [int(c) for c in bnf.bnf_get_cyc()][::-1]  # ascending: d1 | d2 | ...
    lines = [
        f"# {name}: generated by tools/fixtures/gen_arith_equivalent_pair.py",
        "kind = table",
        f"name = {name}",
        f"degree = {int(pari.poldegree(pol))}",
        "narrow_class_group = " + ", ".join(str(c) for c in cyc),
        f"bound = {bound}",
        "provenance = PARI/GP bnfinit on " + pol
        + ("; class group certified by bnfcertify" if certified else "; class group GRH-conditional")
        + "; field is totally imaginary so narrow and wide class groups coincide",
    ]
    relations = []
    for p in [int(q) for q in pari.primes([2, bound])]:
        decomposition = pari.idealprimedec(bnf, p)
        for k, pr in enumerate(decomposition, start=1):
            e = int(pr.pr_get_e())
            f = int(pr.pr_get_f())
            label = [int(c) for c in pari.bnfisprincipal(bnf, pr, 0)][::-1]
            lines.append(f"prime = {p}:{e}:{f}:" + ",".join(str(c) for c in label))
            order = 1
            for c, d in zip(label, cyc):
                g = int(pari.gcd(c, d))
                order = int(pari.lcm(order, d // g))
            relations.append((p, k, order, pr))
    # Each prime raised to the order of its class, checked principal by PARI.
    for p, k, order, pr in relations[:24]:
        check = pari.bnfisprincipal(bnf, pari.idealpow(bnf, pr, order), 0)
        assert all(int(c) == 0 for c in check)
        lines.append(f"p1_relation = {p}.{k}^{order}")
    # A few mixed relations: products of two primes with inverse classes.
    mixed = 0
    for i, (p, k, _, pr) in enumerate(relations):
        for q, m, _, qr in relations[i + 1:]:
            for eq in range(1, 9):
                prod = pari.idealmul(bnf, pr, pari.idealpow(bnf, qr, eq))
                if all(int(c) == 0 for c in pari.bnfisprincipal(bnf, prod, 0)):
                    lines.append(f"p1_relation = {p}.{k}^1 {q}.{m}^{eq}")
                    mixed += 1
                    break
            if mixed >= 8:
                break
        if mixed >= 8:
            break
    with open(path, "w") as out:
        out.write("\n".join(lines) + "\n")
    print(path, "cyc", cyc, "certified", certified)


if __name__ == "__main__":
    out_dir = sys.argv[1]
    bound = int(sys.argv[2]) if len(sys.argv) > 2 else 200
    write_field(f"{out_dir}/octic_m15.field", "Q(a), a^8 = -15", "x^8 + 15", bound)
    write_field(f"{out_dir}/octic_m240.field", "Q(b), b^8 = -240", "x^8 + 240", bound)
