# Copyright 2026 The ptmoments Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent r~2 of SWAP-doped matchgate circuits at N = 10, N_A = N_B = 5.

Brickwork of 3N layers from |0^N>, N_swap random gates replaced by SWAP.
For a pure state, p2 = 1, p3 = (sum s^2)^2 and p4 = sum s^3 over the Schmidt
weights s, so r~2 = E[p3] / E[p4].

Usage: python3 doped_mg.py K
"""

import sys

import numpy as np

rng = np.random.default_rng(1)
N = 10


def haar2():
    z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / abs(d))


def matchgate():
    u = haar2()
    v = haar2()
    v = v * np.sqrt(np.linalg.det(u) / np.linalg.det(v))
    g = np.zeros((4, 4), complex)
    g[np.ix_([0, 3], [0, 3])] = u
    g[np.ix_([1, 2], [1, 2])] = v
    return g


SWAP = np.eye(4)[[0, 2, 1, 3]]
SITES = [q for layer in range(3 * N) for q in range(layer % 2, N - 1, 2)]


def sample(n_swap):
    swaps = set(rng.choice(len(SITES), n_swap, replace=False)) if n_swap else set()
    psi = np.zeros(2**N, complex)
    psi[0] = 1
    psi = psi.reshape([2] * N)
    for i, q in enumerate(SITES):
        g = SWAP if i in swaps else matchgate()
        psi = np.moveaxis(psi, (q, q + 1), (0, 1)).reshape(4, -1)
        psi = np.moveaxis((g @ psi).reshape([2, 2] + [2] * (N - 2)), (0, 1), (q, q + 1))
    s = np.linalg.svd(psi.reshape(32, 32), compute_uv=False) ** 2
    return (s**3).sum(), (s**2).sum() ** 2


def main():
    k = int(sys.argv[1]) if len(sys.argv) > 1 else 500
    for n_swap in [0, 2, 4, 8, 16, 32, 64]:
        a = np.array([sample(n_swap) for _ in range(k)])
        print(n_swap, a[:, 0].mean() / a[:, 1].mean())


if __name__ == "__main__":
    main()
