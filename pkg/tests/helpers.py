import numpy as np


def random_minphase(rng, degree, rmin=0.1, rmax=0.9):
    """Real monic polynomial with all roots strictly inside the unit circle."""
    roots = []
    while len(roots) < degree:
        r = rng.uniform(rmin, rmax)
        if degree - len(roots) >= 2 and rng.random() < 0.5:
            z = r * np.exp(1j * rng.uniform(0.1, np.pi - 0.1))
            roots += [z, np.conj(z)]
        else:
            roots.append(r * rng.choice([-1.0, 1.0]))
    return np.real(np.poly(roots))


ACCEPTANCE = []


def verdict(name, ok, detail):
    """Record one acceptance line, then assert it."""
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line
