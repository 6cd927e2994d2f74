"""Regenerates the three robust-logistic domain tables in this directory."""

import numpy as np

SAMPLES = 200
CENTERS = np.array([[0.0, 2.0], [-1.8, -1.0], [1.8, -1.0]])


def domain(rng, shift, scale):
    labels = rng.integers(0, len(CENTERS), SAMPLES)
    points = CENTERS[labels] * scale + shift + rng.normal(0.0, 0.8, (SAMPLES, 2))
    return points, labels


def main():
    rng = np.random.default_rng(20240611)
    settings = {"domain_a": ((0.0, 0.0), 1.0), "domain_b": ((1.5, 0.5), 0.8), "domain_c": ((-0.5, -1.5), 1.3)}
    for name, (shift, scale) in settings.items():
        points, labels = domain(rng, np.array(shift), scale)
        with open(f"{name}.csv", "w") as out:
            out.write("# x1,x2,label\n")
            for (a, b), label in zip(points, labels):
                out.write(f"{a:.6f},{b:.6f},{label}\n")


if __name__ == "__main__":
    main()
