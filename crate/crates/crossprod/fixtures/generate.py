#!/usr/bin/env python3
"""Regenerates the JSON fixtures next to this script.

Independent of the Rust code: fields are quotients of Q[y1..yk] by one
univariate minimal polynomial per generator, reduced with sympy. Before
anything is written the script re-checks the presentation relations and every
stored strong witness on its own.

    python3 generate.py        # writes *.json into this directory
"""

import itertools
import json
import os

import sympy as sp
from sympy import Rational

HERE = os.path.dirname(os.path.abspath(__file__))


class Field:
    """Q[gens]/(minpolys), monomial basis with the first generator outermost."""

    def __init__(self, gens, minpolys, labels):
        self.gens = list(gens)
        self.minpolys = [sp.expand(p) for p in minpolys]
        degs = [sp.degree(p, g) for p, g in zip(self.minpolys, self.gens)]
        self.exps = list(itertools.product(*[range(d) for d in degs]))
        self.monos = [sp.Mul(*[g**e for g, e in zip(self.gens, ex)]) for ex in self.exps]
        self.labels = labels
        assert len(labels) == len(self.monos)

    @property
    def dim(self):
        return len(self.monos)

    def coords(self, expr):
        _, r = sp.reduced(sp.expand(expr), self.minpolys, *self.gens)
        p = sp.Poly(r, *self.gens)
        out = []
        for ex in self.exps:
            out.append(Rational(p.coeff_monomial(ex)))
        return out

    def expr(self, c):
        return sp.Add(*[ci * m for ci, m in zip(c, self.monos)])

    def el(self, expr):
        return self.coords(expr)

    def mul(self, a, b):
        return self.coords(self.expr(a) * self.expr(b))

    def one(self):
        return self.coords(1)

    def mul_matrix(self, a):
        cols = [self.coords(self.expr(a) * m) for m in self.monos]
        return sp.Matrix(cols).T

    def inv(self, a):
        sol = self.mul_matrix(a).LUsolve(sp.Matrix(self.one()))
        return [Rational(x) for x in sol]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def structure(self):
        return [[self.coords(mi * mj) for mj in self.monos] for mi in self.monos]

    def hom_matrix(self, images, target=None):
        """Matrix (columns = images of basis monomials) of the ring map gens -> images."""
        target = target or self
        subs = dict(zip(self.gens, images))
        cols = [target.coords(m.subs(subs, simultaneous=True)) for m in self.monos]
        return sp.Matrix(cols).T

    def presentation(self):
        return {
            "labels": self.labels,
            "structure": [[vec(c) for c in row] for row in self.structure()],
            "unit": vec(self.one()),
        }


def apply(mat, c):
    return [Rational(x) for x in mat * sp.Matrix(c)]


def vec(c):
    return [fmt(x) for x in c]


def fmt(x):
    x = Rational(x)
    return str(x.p) if x.q == 1 else f"{x.p}/{x.q}"


def mat(m):
    return [vec(m.row(i)) for i in range(m.rows)]


class Galois:
    def __init__(self, field, orders, sigma):
        self.k, self.orders, self.sigma = field, orders, sigma
        for s, n in zip(sigma, orders):
            assert s**n == sp.eye(field.dim) and all(s**d != sp.eye(field.dim) for d in range(1, n))
        for s in sigma:
            for t in sigma:
                assert s * t == t * s

    def act(self, i, a, times=1):
        for _ in range(times):
            a = apply(self.sigma[i], a)
        return a

    def act_exp(self, m, a):
        for i, e in enumerate(m):
            a = self.act(i, a, e)
        return a

    def norm(self, i, a):
        out, cur = self.k.one(), a
        for _ in range(self.orders[i]):
            out = self.k.mul(out, cur)
            cur = self.act(i, cur)
        return out

    def u_im(self, u, i, m):
        """u_{i,m} from z_i z^m = u_{i,m} z^m z_i, reading z^m as a word."""
        out, prefix = self.k.one(), [0] * len(m)
        for j, e in enumerate(m):
            for _ in range(e):
                out = self.k.mul(out, self.act_exp(prefix, u[i][j]))
                prefix[j] += 1
        return out

    def check_relations(self, u, b):
        k, r = self.k, len(self.orders)
        for i in range(r):
            assert u[i][i] == k.one(), "u_ii"
            for j in range(r):
                assert k.mul(u[i][j], u[j][i]) == k.one(), "u_ji = u_ij^-1"
        for kk in range(r):
            for i in range(r):
                lhs = self.act(kk, b[i])
                rhs = k.mul(self.norm(i, u[kk][i]), b[i])
                assert lhs == rhs, f"sigma_{kk+1}(b_{i+1})"

    def check_strong(self, u, w):
        m, l, x = w
        k = self.k
        for i in range(len(self.orders)):
            rhs = k.mul(k.div(self.act_exp(m, x[i]), x[i]), k.div(l, self.act(i, l)))
            assert self.u_im(u, i, m) == rhs, f"witness row {i+1}"

    def galois_json(self):
        return {**self.k.presentation(), "orders": self.orders, "sigma": [mat(s) for s in self.sigma]}


def strong_json(w):
    m, l, x = w
    return {"m": list(m), "l": vec(l), "x": [vec(xi) for xi in x]}


def homog_json(coeff, m, w):
    return {"coeff": vec(coeff), "m": list(m), "w": list(w)}


def fixture(name, description, gal, u, b, strong=(), pair=(), graded=None, extra=None):
    gal.check_relations(u, b)
    for w in strong:
        gal.check_strong(u, w)
    doc = {
        "schema": "crossprod/fixture-v1",
        "name": name,
        "description": description,
        "field": gal.galois_json(),
        "cocycle": {"u": [[vec(x) for x in row] for row in u], "b": [vec(x) for x in b]},
        "witnesses": {
            "strong": [strong_json(w) for w in strong],
            "pair": [{"m": list(m), "n": list(n), "a": vec(a), "b": vec(bb)} for m, n, a, bb in pair],
        },
    }
    if graded:
        doc["graded"] = graded
    if extra:
        doc.update(extra)
    return doc


# --- INSTANCE-B: Q(sqrt2, sqrt3), u12 = -1, b = (3, 5) -------------------

r3, r2 = sp.symbols("r3 r2")
KB = Field([r3, r2], [r3**2 - 3, r2**2 - 2], ["1", "√2", "√3", "√6"])
GB = Galois(KB, [2, 2], [KB.hom_matrix([r3, -r2]), KB.hom_matrix([-r3, r2])])


def b_data(u12):
    one = KB.one()
    u = [[one, KB.el(u12)], [KB.inv(KB.el(u12)), one]]
    return u


UB = b_data(-1)
BB = [KB.el(3), KB.el(5)]
WB = ((1, 1), KB.el(r2), [KB.one(), KB.el(r2)])

instance_b = fixture(
    "INSTANCE-B",
    "K = Q(√2,√3), G = C2 x C2 with sigma_1 negating √2 and sigma_2 negating √3; u12 = -1, b = (3, 5).",
    GB,
    UB,
    BB,
    strong=[WB],
    pair=[((1, 0), (1, 1), KB.inv(KB.el(r2)), KB.one())],
    graded={
        "elements": [homog_json(KB.el(r2), (1, 1), (0, 0)), homog_json(KB.one(), (1, 0), (0, 0))],
        "pairs": [
            [homog_json(KB.one(), (1, 0), (0, 0)), homog_json(KB.el(r2), (1, 1), (0, 0))],
            [homog_json(KB.one(), (1, 0), (0, 0)), homog_json(KB.one(), (0, 1), (0, 0))],
        ],
    },
)

instance_b_trivial = fixture(
    "INSTANCE-B-TRIVIAL",
    "INSTANCE-B's field with u = 1 and b = (3, 5), i.e. the tensor product of the quaternion algebras (2, 3) and (3, 5).",
    GB,
    b_data(1),
    BB,
    strong=[((1, 0), KB.one(), [KB.one(), KB.one()])],
)

# Rescaling z_1 -> a1 w_1, z_2 -> a2 w_2 gives an isomorphic algebra whose
# default candidate searches come up empty.
A1, A2 = KB.el(1 + r2 + r3), KB.el(1 + r2)
images = [A1, A2]


def rescaled():
    u = [[None, None], [None, None]]
    for i in range(2):
        for j in range(2):
            num = KB.mul(KB.mul(UB[i][j], images[j]), GB.act(j, images[i]))
            den = KB.mul(images[i], GB.act(i, images[j]))
            u[i][j] = KB.div(num, den)
    b = [KB.div(BB[i], GB.norm(i, images[i])) for i in range(2)]
    return u, b


UR, BR = rescaled()
a_m = KB.mul(A1, GB.act(0, A2))
WR = ((1, 1), KB.mul(WB[1], a_m), [KB.mul(x, a) for x, a in zip(WB[2], images)])
instance_b_rescaled = fixture(
    "INSTANCE-B-RESCALED",
    "INSTANCE-B rewritten in generators w_i with z_1 = (1+√2+√3) w_1, z_2 = (1+√2) w_2. "
    "Isomorphic to INSTANCE-B, yet no default search candidate yields a witness.",
    GB,
    UR,
    BR,
    strong=[WR],
    pair=[((1, 0), (0, 1), KB.div(KB.el(r2), A2), A1)],
    extra={"rescaled_from": {"fixture": "INSTANCE-B", "images": [vec(a) for a in images]}},
)

# --- INSTANCE-B3: cubic subfields of Q(zeta7) and Q(zeta9) ----------------

al, be = sp.symbols("al be")
KB3 = Field(
    [al, be],
    [al**3 + al**2 - 2 * al - 1, be**3 - 3 * be + 1],
    ["1", "β", "β²", "α", "αβ", "αβ²", "α²", "α²β", "α²β²"],
)
GB3 = Galois(KB3, [3, 3], [KB3.hom_matrix([al**2 - 2, be]), KB3.hom_matrix([al, be**2 - 2])])
L3 = KB3.el(al + be)
u12 = KB3.div(GB3.act(1, L3), L3)
UB3 = [[KB3.one(), u12], [KB3.inv(u12), KB3.one()]]
BB3 = [KB3.div(KB3.el(3), GB3.norm(0, L3)), KB3.el(2)]
WB3 = ((1, 0), L3, [L3, KB3.one()])
instance_b3 = fixture(
    "INSTANCE-B3",
    "K = Q(α, β) with α = 2cos(2π/7), β = 2cos(2π/9); G = C3 x C3 with sigma_1: α -> α²-2 and "
    "sigma_2: β -> β²-2. With l = α+β: u12 = sigma_2(l)/l, b = (3/N_1(l), 2).",
    GB3,
    UB3,
    BB3,
    strong=[WB3],
    graded={"elements": [homog_json(L3, (1, 0), (0, 0))], "pairs": []},
)

# --- rank one: Q(sqrt2)/Q, b = 3 --------------------------------------------

s2 = sp.symbols("s2")
KQ = Field([s2], [s2**2 - 2], ["1", "√2"])
GQ = Galois(KQ, [2], [KQ.hom_matrix([-s2])])
q2_rank1 = fixture(
    "Q2-RANK1",
    "The quaternion algebra (2, 3)_Q as a cyclic crossed product over Q(√2); G is cyclic.",
    GQ,
    [[KQ.one()]],
    [KQ.el(3)],
)

# --- composites KE = K (x) E ------------------------------------------------


def composite(name, description, base_name, gal, e_gens, e_polys, e_labels, e_autos):
    k = gal.k
    e = Field(e_gens, e_polys, e_labels)
    ke_labels = [
        b if a == "1" else a if b == "1" else f"{a}{b}" for a in k.labels for b in e.labels
    ]
    ke = Field(k.gens + e_gens, k.minpolys + e.minpolys, ke_labels)
    assert sp.Matrix([ke.coords(a * b) for a in k.monos for b in e.monos]).T.rank() == ke.dim
    sigma = []
    for s in gal.sigma:
        imgs = [k.expr(apply(s, k.coords(g))) for g in k.gens]
        sigma.append(ke.hom_matrix(imgs + e_gens))
    embed_k = k.hom_matrix(k.gens, target=ke)
    embed_e = e.hom_matrix(e_gens, target=ke)
    rel = [ke.hom_matrix(k.gens + imgs) for imgs in e_autos]
    return {
        "schema": "crossprod/composite-v1",
        "name": name,
        "description": description,
        "base": base_name,
        "e": e.presentation(),
        "ke": {**ke.presentation(), "sigma": [mat(s) for s in sigma]},
        "embed_k": mat(embed_k),
        "embed_e": mat(embed_e),
        "rel_gal": [mat(m) for m in rel],
    }, ke, embed_k, embed_e


c = sp.Symbol("c")
comp_cube, KE3, EMB_K3, EMB_E3 = composite(
    "B-CUBEROOT2",
    "INSTANCE-B tensored with E = Q(2^(1/3)); E is not Galois, so no automorphisms over K are given.",
    "INSTANCE-B",
    GB,
    [c],
    [c**3 - 2],
    ["1", "c", "c²"],
    [],
)
g7 = sp.Symbol("g")
comp_zeta7, *_ = composite(
    "B-ZETA7PLUS",
    "INSTANCE-B tensored with the real cubic subfield Q(γ) of Q(zeta7), γ = 2cos(2π/7); Gal(KE/K) is generated by γ -> γ²-2.",
    "INSTANCE-B",
    GB,
    [g7],
    [g7**3 + g7**2 - 2 * g7 - 1],
    ["1", "γ", "γ²"],
    [[g7**2 - 2]],
)
r5 = sp.Symbol("r5")
comp_sqrt5, *_ = composite(
    "B3-SQRT5",
    "INSTANCE-B3 tensored with Q(√5); Gal(KE/K) is generated by √5 -> -√5.",
    "INSTANCE-B3",
    GB3,
    [r5],
    [r5**2 - 5],
    ["1", "√5"],
    [[-r5]],
)
comp_trivial = {
    "schema": "crossprod/composite-v1",
    "name": "B-TRIVIAL-E",
    "description": "E = Q, KE = K.",
    "base": "INSTANCE-B",
    "e": {"labels": ["1"], "structure": [[["1"]]], "unit": ["1"]},
    "ke": {**KB.presentation(), "sigma": [mat(s) for s in GB.sigma]},
    "embed_k": mat(sp.eye(4)),
    "embed_e": mat(sp.Matrix(KB.one())),
    "rel_gal": [],
}

# A witness over KE = K(2^(1/3)) that does not come from K: scale l and the
# x_i of INSTANCE-B's witness by 1 + c, which G fixes.
scale = KE3.el(1 + c)
ke_w = (
    WB[0],
    KE3.mul(apply(EMB_K3, WB[1]), scale),
    [KE3.mul(apply(EMB_K3, x), scale) for x in WB[2]],
)
witness_ke = {
    "schema": "crossprod/witness-v1",
    "over": "KE",
    "fixture": instance_b,
    "composite": comp_cube,
    "strong": strong_json(ke_w),
}
witness_b = {
    "schema": "crossprod/witness-v1",
    "over": "K",
    "fixture": instance_b,
    "composite": None,
    "strong": strong_json(WB),
}


def dump(obj, level=0):
    pad = "  " * level
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {dump(v, level + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return json.dumps(obj, ensure_ascii=False)
        items = [f"{pad}  {dump(v, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    return json.dumps(obj, ensure_ascii=False)


def write(name, obj):
    with open(os.path.join(HERE, name), "w", encoding="utf-8") as f:
        f.write(dump(obj) + "\n")


if __name__ == "__main__":
    write("instance-b.json", instance_b)
    write("instance-b-trivial.json", instance_b_trivial)
    write("instance-b-rescaled.json", instance_b_rescaled)
    write("instance-b3.json", instance_b3)
    write("q2-rank1.json", q2_rank1)
    write("composite-b-cuberoot2.json", comp_cube)
    write("composite-b-zeta7plus.json", comp_zeta7)
    write("composite-b3-sqrt5.json", comp_sqrt5)
    write("composite-b-trivial.json", comp_trivial)
    write("witness-b.json", witness_b)
    write("witness-b-cuberoot2.json", witness_ke)
