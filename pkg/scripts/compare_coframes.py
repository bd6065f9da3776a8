"""Compare E0 on free_n633 for the identity metric and the metric of the hat coframe, degree by degree."""
from rumin.calculus import coframe_gram
from rumin.lie import builtin, theta_hat_frame
from rumin.linalg import hstack, inverse, rank
from rumin.subcomplex import build_subcomplex, compare_e0


def main():
    spec = builtin("free_n633")
    G_hat = coframe_gram(inverse(theta_hat_frame()))
    print("hat-coframe Gram on covectors:")
    for row in G_hat.rows:
        print("  ", " ".join(f"{str(x):>4s}" for x in row))
    ra, rb = build_subcomplex(spec), build_subcomplex(spec, G_hat)
    for k, (Ka, Kb) in enumerate(zip(ra.E0_bases, rb.E0_bases)):
        joint = rank(hstack([Ka, Kb], Ka.nrows))
        print(f"degree {k}: dim {Ka.ncols} vs {Kb.ncols}, dim of sum {joint}"
              + ("  (differ)" if joint > Ka.ncols else ""))
    print(compare_e0(spec, None, G_hat).describe())


if __name__ == "__main__":
    main()
