"""Random step-2 algebras: Betti numbers of (E0, D) against the Chevalley-Eilenberg oracle."""
import argparse
import random
from dataclasses import dataclass

from rumin.lie import random_step2_algebra
from rumin.subcomplex import build_subcomplex


@dataclass
class SweepConfig:
    count: int = 50
    seed: int = 0
    n_max: int = 6
    bound: int = 9


def sweep(cfg: SweepConfig) -> int:
    rng = random.Random(cfg.seed)
    failures = 0
    for i in range(cfg.count):
        spec = random_step2_algebra(rng, cfg.n_max, cfg.bound, name=f"random{i}")
        r = build_subcomplex(spec)
        good = r.ok and r.betti == r.oracle_betti
        failures += not good
        print(f"{spec.name:9s} n={spec.n} w={spec.weights} E0 {tuple(r.dims_E0)} Betti {tuple(r.betti)}"
              + ("" if good else f"  MISMATCH {r.first_failure()}"))
    print(f"{cfg.count - failures}/{cfg.count} agree with the oracle")
    return failures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for f, v in SweepConfig().__dict__.items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=int, default=v)
    cfg = SweepConfig(**vars(ap.parse_args()))
    raise SystemExit(1 if sweep(cfg) else 0)


if __name__ == "__main__":
    main()
