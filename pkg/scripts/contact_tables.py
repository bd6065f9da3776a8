"""Print the symbolic contact-frame tables and the comparison with the printed versions."""
import argparse

from rumin.contact import emit_lines, verify_printed_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only-check", action="store_true")
    args = ap.parse_args()
    if not args.only_check:
        print("\n".join(emit_lines()))
        print()
    res = verify_printed_tables()
    for name, ok in res.checks.items():
        print(f"[{'pass' if ok else 'FAIL'}] {name}")
    for m in res.mismatches:
        print(f"[diff] {m.describe()}")


if __name__ == "__main__":
    main()
