"""Print the possible-world tables of the worked example before and after the transform.

    python scripts/reproduce_tables.py [--semantics admissible]
"""

import argparse
from pathlib import Path

from praaf import enumerate_extensions, enumerate_worlds, to_normal_form
from praaf.core import format_set, sorted_sets
from praaf.io import format_probability, read_praaf, serialize_praaf

DATA = Path(__file__).resolve().parent.parent / "data"


def show(praaf, semantics, only_with=None):
    for w in enumerate_worlds(praaf):
        exts = sorted_sets(enumerate_extensions(w.realized, semantics))
        if only_with:
            exts = [e for e in exts if only_with in e]
        flag = " " if w.proper else "*"
        print(f"{flag} {' & '.join(w.literals()):28} {format_probability(w.probability):>6}  "
              + ", ".join(format_set(e) for e in exts))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--semantics", default="admissible")
    parser.add_argument("--file", default=str(DATA / "fig2.praaf"))
    args = parser.parse_args()

    original = read_praaf(args.file)
    print(f"== original ({args.semantics}; * marks worlds with a dangling attack)")
    show(original, args.semantics)

    cert = to_normal_form(original)
    print("\n== normal form")
    print(serialize_praaf(cert.transformed), end="")
    print(f"\n== normal form worlds (extensions containing {cert.eta})")
    show(cert.transformed, args.semantics, only_with=cert.eta.eta_id if cert.mapping else None)


if __name__ == "__main__":
    main()
