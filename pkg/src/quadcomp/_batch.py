"""Vectorized kernels for bulk irreducibility checks.

Coefficients live in numpy arrays, one polynomial per row, low degree
first, stored as balanced residues (integers in [-(p-1)/2, (p-1)/2])
inside float64 entries for prime fields, or complex128 entries for
F_{p^2} with modulus x^2 + 1 (the basis element t satisfies t^2 = -1, so
c0 + c1*t multiplies exactly like the complex number c0 + c1*i).

Products are computed by FFT; every intermediate value stays far below
2^52, so rounding back to integers is exact.  Reduction modulo a monic
degree-d row polynomial folds the top coefficients down one at a time.

For degrees d = 2^m the Rabin irreducibility test needs no gcds:
f is irreducible iff x^(q^d) = x and x^(q^(d/2)) != x modulo f, because
x^(q^d) = x forces f squarefree with factor degrees dividing d, and any
proper factor degree would divide d/2.
"""

from __future__ import annotations

from typing import Dict, Sequence

import numpy as np

from .finite_field import FiniteField
from .monoid import Alphabet
from .polynomial import Poly

_CHUNK = 8192


def _mode_is_complex(field: FiniteField) -> bool:
    if field.k == 1:
        return False
    if field.k == 2 and tuple(field.modulus) == (1, 0, 1):
        return True
    raise ValueError(
        "batched kernels support prime fields and degree-2 extensions "
        "with modulus x^2 + 1 only"
    )


def _balance(arr, p):
    if np.iscomplexobj(arr):
        re = arr.real - p * np.rint(arr.real / p)
        im = arr.imag - p * np.rint(arr.imag / p)
        return re + 1j * im
    return arr - p * np.rint(arr / p)


def _rint(arr, cplx):
    if cplx:
        return np.rint(arr.real) + 1j * np.rint(arr.imag)
    return np.rint(arr)


def _embed(field: FiniteField, raw):
    """One raw field element as a balanced float or complex scalar."""
    p = field.p
    if field.k == 1:
        v = raw % p
        return float(v - p if v > p // 2 else v)
    c0, c1 = raw[0] % p, raw[1] % p
    if c0 > p // 2:
        c0 -= p
    if c1 > p // 2:
        c1 -= p
    return complex(c0, c1)


def _square_full(P, p, cplx):
    """Rows squared as plain polynomials (no modulus)."""
    m = P.shape[1]
    out_len = 2 * m - 1
    n = 1 << (out_len - 1).bit_length()
    if cplx:
        t = np.fft.fft(P, n=n, axis=1)
        prod = _rint(np.fft.ifft(t * t, axis=1)[:, :out_len], True)
    else:
        t = np.fft.rfft(P, n=n, axis=1)
        prod = _rint(np.fft.irfft(t * t, n=n, axis=1)[:, :out_len], False)
    return _balance(prod, p)


def compose_levels(
    field: FiniteField, alphabet: Alphabet, max_len: int
) -> Dict[int, np.ndarray]:
    """Coefficient arrays of pi(w) for every word of length 1..max_len.

    Level t holds len(alphabet)^t rows; the word (j_1, ..., j_t) with j_1
    outermost sits at row sum(j_i * L^(t-i)), i.e. rows follow
    itertools.product order.
    """
    cplx = _mode_is_complex(field)
    p = field.p
    dtype = np.complex128 if cplx else np.float64
    a_vals = [_embed(field, quad.a.val) for quad in alphabet]
    b_vals = [_embed(field, quad.b.val) for quad in alphabet]
    current = np.zeros((1, 2), dtype=dtype)
    current[0, 1] = 1.0
    levels = {}
    for t in range(1, max_len + 1):
        blocks = []
        for j in range(len(alphabet)):
            shifted = current.copy()
            shifted[:, 0] -= a_vals[j]
            squared = _square_full(shifted, p, cplx)
            squared[:, 0] -= b_vals[j]
            blocks.append(squared)
        current = _balance(np.vstack(blocks), p)
        levels[t] = current
    return levels


def _mul_x(P, f_low, d, p):
    out = np.empty_like(P)
    out[:, 0] = 0
    out[:, 1:] = P[:, : d - 1]
    top = _balance(P[:, d - 1], p)
    out -= top[:, None] * f_low
    return _balance(out, p)


def _reducer(f_low, d, p):
    """Tensor of x^(d+j) mod f for j = 0..d-2, one slab per row."""
    cur = _balance(-f_low, p)
    M = np.empty((f_low.shape[0], d - 1, d), dtype=f_low.dtype)
    M[:, 0] = cur
    for j in range(1, d - 1):
        cur = _mul_x(cur, f_low, d, p)
        M[:, j] = cur
    return M


def _fold(P, M, d, p):
    """Reduce rows of degree <= 2d-2 using the precomputed power tensor."""
    tops = _balance(P[:, d:], p)
    low = P[:, :d] + np.einsum("rj,rjc->rc", tops, M)
    return _balance(low, p)


def _sq_mod(P, M, d, p, cplx):
    n = 2 * d
    if cplx:
        t = np.fft.fft(P, n=n, axis=1)
        prod = _rint(np.fft.ifft(t * t, axis=1)[:, : 2 * d - 1], True)
    else:
        t = np.fft.rfft(P, n=n, axis=1)
        prod = _rint(np.fft.irfft(t * t, n=n, axis=1)[:, : 2 * d - 1], False)
    return _fold(prod, M, d, p)


def _pow_x(e, f_low, M, d, p, cplx):
    """x^e modulo the row polynomials, by binary powering; multiplication
    by x is a shift plus one correction, so only squarings pay for FFTs."""
    dtype = np.complex128 if cplx else np.float64
    acc = np.zeros((f_low.shape[0], d), dtype=dtype)
    acc[:, 1] = 1.0
    for bit in bin(e)[3:]:
        acc = _sq_mod(acc, M, d, p, cplx)
        if bit == "1":
            acc = _mul_x(acc, f_low, d, p)
    return acc


def _compose_mod(Y, M, d, p, cplx):
    """Y(Y) modulo the row polynomials (Horner, transform of Y cached)."""
    n = 2 * d
    if cplx:
        y_hat = np.fft.fft(Y, n=n, axis=1)
    else:
        y_hat = np.fft.rfft(Y, n=n, axis=1)
    dtype = np.complex128 if cplx else np.float64
    Z = np.zeros((Y.shape[0], d), dtype=dtype)
    Z[:, 0] = Y[:, d - 1]
    for j in range(d - 2, -1, -1):
        if cplx:
            prod = _rint(np.fft.ifft(np.fft.fft(Z, n=n, axis=1) * y_hat, axis=1)[:, : 2 * d - 1], True)
        else:
            prod = _rint(np.fft.irfft(np.fft.rfft(Z, n=n, axis=1) * y_hat, n=n, axis=1)[:, : 2 * d - 1], False)
        Z = _fold(prod, M, d, p)
        Z[:, 0] += Y[:, j]
    return _balance(Z, p)


def _rabin_chunk(f_low, d, q, p, cplx):
    M = _reducer(f_low, d, p)
    y = _pow_x(q ** (d // 2), f_low, M, d, p, cplx)
    x_arr = np.zeros_like(y)
    x_arr[:, 1] = 1.0
    moved = ~np.all(y == x_arr, axis=1)
    z = _compose_mod(y, M, d, p, cplx)
    fixed = np.all(z == x_arr, axis=1)
    return fixed & moved


def rabin_irreducible_2power(field: FiniteField, coeffs) -> np.ndarray:
    """Row-wise irreducibility for monic polynomials of degree 2^m >= 2.

    coeffs: (rows, d+1) array in the balanced representation produced by
    compose_levels or from_polys.
    """
    cplx = _mode_is_complex(field)
    arr = np.asarray(coeffs, dtype=np.complex128 if cplx else np.float64)
    rows, width = arr.shape
    d = width - 1
    if d < 2 or d & (d - 1):
        raise ValueError("degree must be a power of 2, at least 2")
    p = field.p
    if not np.all(_balance(arr[:, d], p) == 1):
        raise ValueError("rows must be monic")
    f_low = _balance(arr[:, :d], p)
    out = np.empty(rows, dtype=bool)
    step = max(512, _CHUNK * 32 // d)
    for s in range(0, rows, step):
        block = f_low[s : s + step]
        out[s : s + step] = _rabin_chunk(block, d, field.q, p, cplx)
    return out


def from_polys(field: FiniteField, polys: Sequence[Poly]) -> np.ndarray:
    """Pack monic Polys of one common degree into a balanced array."""
    if not polys:
        raise ValueError("no polynomials given")
    cplx = _mode_is_complex(field)
    degree = polys[0].degree
    arr = np.zeros((len(polys), degree + 1), dtype=np.complex128 if cplx else np.float64)
    for r, poly in enumerate(polys):
        if poly.field != field or poly.degree != degree or not poly.is_monic:
            raise ValueError("rows must be monic, same field, same degree")
        for c, raw in enumerate(poly.vals):
            arr[r, c] = _embed(field, raw)
    return arr


def to_poly(field: FiniteField, row) -> Poly:
    """One balanced coefficient row back into a Poly."""
    p = field.p
    if field.k == 1:
        vals = [int(np.rint(np.real(v))) % p for v in row]
    else:
        vals = [(int(np.rint(np.real(v))) % p, int(np.rint(np.imag(v))) % p) for v in row]
    return Poly(field, vals, raw=True)
