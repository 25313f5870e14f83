"""
Simulated trajectories against the exact limit
==============================================

Run the flip law at alpha = 1/2 for 5000 steps, 200 times, and compare the
average 2-tuple frequency with the Perron vector (3/10, 1/5, 1/5, 3/10).
The mean replacement length is 3/2, so words grow by about n/2.
"""
import time
from fractions import Fraction

from mutadyn import classify, enumerate_distribution, monte_carlo_frequency
from mutadyn.fixtures import flip_law, running_law
from mutadyn.simulate import empirical_distribution

law = flip_law(Fraction(1, 2))
tau = classify(law).tau

#%%
t0 = time.perf_counter()
summary = monte_carlo_frequency(law, (0, 1), k=2, n=5000, trials=200, seed=4242)
print(f"{time.perf_counter() - t0:.1f}s")
for label, mean, std in zip(("00", "01", "10", "11"), summary.mean, summary.std):
    print(f"{label}  {mean:.4f} +- {std:.4f}")
print(f"drift {summary.mean_drift:.4f} (tau - 1 = {tau - 1})")

#%%
# Seeds are derived per trial, so the result does not depend on the number
# of worker processes.
again = monte_carlo_frequency(law, (0, 1), k=2, n=5000, trials=200, seed=4242, threads=4)
print("identical with 4 workers:", (again.mean == summary.mean).all())

#%%
# One step from 01 under the running law, exact against sampled.
exact = enumerate_distribution(running_law(), (0, 1), 1).as_dict()
sampled = empirical_distribution(running_law(), (0, 1), 1, trials=100_000, seed=1)
for w, p in exact.items():
    print("".join(map(str, w)), p, f"{sampled.get(w, 0):.4f}")
