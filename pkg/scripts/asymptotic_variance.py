"""Compare the Monte Carlo variance of sqrt(n) * rho_hat(1) with the closed-form w11 for ARCH(1)."""

import argparse

import numpy as np

from spwn.acf_stats import acf_batch, w_hat_batch
from spwn.distributions import RngStream, stream_id_for
from spwn.simulate import ArchSpec, arch1_theoretical_w11, simulate_batch


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--reps", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"{'alpha1':>7} {'w11':>8} {'var':>8} {'mean w_hat':>11}")
    for g, alpha in enumerate((0.05, 0.15, 0.25, 0.35, 0.45, 0.55)):
        spec = ArchSpec(alpha)
        rho, w = [], []
        for k in range(0, args.reps, 500):
            streams = [RngStream(args.seed, stream_id_for(g, r)) for r in range(k, min(k + 500, args.reps))]
            x = simulate_batch(spec, args.n, streams)
            rho.append(acf_batch(x, 1))
            w.append(w_hat_batch(x, 1))
        v = np.var(np.sqrt(args.n) * np.concatenate(rho), ddof=1)
        print(f"{alpha:>7.2f} {arch1_theoretical_w11(spec):>8.3f} {v:>8.3f} {np.mean(np.concatenate(w)):>11.3f}")


if __name__ == "__main__":
    main()
