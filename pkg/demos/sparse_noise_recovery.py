"""Recovery under sparse corruption at the benchmark scale.

b = A p is corrupted on a fraction gamma of its entries with centered
Gaussian noise (variance 0.25).  The minimum-l1 fit recovers p to a few
tenths of a percent while the corruption stays sparse enough, and degrades
gracefully as the sparsity ratio grows.  Expect roughly half a minute.
"""

import time

import numpy as np

import l1fit

m, n = 256, 128
methods = ("L1-RES", "L1-GPSR", "L1-TNIPM", "L1-HP", "L1-IST", "L1-ADM", "L1-POB")

print(f"instance: {m} x {n}, noise variance 0.25")
print("\ngamma   " + "".join(f"{meth:>12s}" for meth in methods))
for gamma in (0.25, 0.5, 0.75):
    errors = []
    for method in methods:
        problem, p = l1fit.gen_instance(m, n, seed=0)
        noisy = l1fit.MlmProblem(problem.A, l1fit.add_sparse_noise(problem.b, gamma, 0.25, seed=0))
        report = l1fit.solve(noisy, method)
        errors.append(np.linalg.norm(report.x - p) / np.linalg.norm(p))
    print(f"{gamma:<8.2f}" + "".join(f"{e:>12.2e}" for e in errors))

print("\nper-method timing at gamma = 0.25:")
problem, p = l1fit.gen_instance(m, n, seed=0)
noisy = l1fit.MlmProblem(problem.A, l1fit.add_sparse_noise(problem.b, 0.25, 0.25, seed=0))
for method in methods:
    t0 = time.perf_counter()
    report = l1fit.solve(noisy, method)
    print(f"{method:9s} {time.perf_counter() - t0:7.2f}s  iterations={report.iterations}")
