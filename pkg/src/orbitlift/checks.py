"""
Verification suites.  Each check yields a record {id, paper_anchor, status,
witness?}; deterministic checks run per tableau, randomized ones draw their
samples from a pool of instances with a per-sample seeded generator.
"""

from dataclasses import dataclass, field

from .dlinalg import DMatrix, bracket, nilpotency_index, nilpotent_exp, qrank, rank
from .dualpair import (
    DualPair,
    build_moment_lift,
    build_wspace,
    moment,
    phi_T,
    sigma_report,
    stable_range_lift,
)
from .hermitian import HermitianModule, adjoint, is_lie_algebra_element, kappa, lie_algebra_basis
from .sampling import (
    rand_combination,
    rand_dmatrix,
    rand_hermitian_module,
    rand_isometry,
    rand_lie_element,
    rand_mtilde,
    rand_n_element,
    rand_rational,
    rng_for,
)
from .scalars import rat_str
from .sl2 import (
    alpha_gamma,
    character_functional,
    grade,
    heisenberg_coordinates,
    heisenberg_group,
    kappa_minus1,
    kappa_minus1_alt,
    kappa_minus1_gram,
    mx_dimension_report,
    sign_identity_failures,
    weight_forms,
)
from .tableaux import build_module, dominates, is_admissible, jordan_type, tableau_of_triple

ANCHORS = {
    "tableaux.admissible": "sign rule (-1)^(t-1) eps_row = epsilon on every row",
    "tableaux.sign_law": "the built Gram matrix is epsilon-Hermitian and nondegenerate",
    "tableaux.jordan_roundtrip": "Jordan type of X equals the partition of the tableau",
    "tableaux.tableau_roundtrip": "tableau read back from the triple equals the input",
    "sl2.relations": "[H,X]=2X, [H,Y]=-2Y, [X,Y]=H with X, H, Y in g",
    "sl2.grading": "V = sum V_i, g = sum g_i, [g_i, g_j] in g_(i+j)",
    "sl2.weight_forms": "B pairs V_i perfectly with V_-i; each B_i is nondegenerate",
    "sl2.sign_identity": "B_(i+2)(Xv, Xw) = -B_i(v, w) on every isotypic block",
    "sl2.kappa_minus1": "kappa_-1 antisymmetric, nondegenerate, kappa(X,[S,T]) = kappa([X,S],T)",
    "sl2.character": "Z -> kappa(X, Z) vanishes on [u, u]",
    "sl2.mx_dimension": "dim m_X equals the sum of dims of the isometry algebras of the attached forms",
    "hermitian.lie_dim": "dim g matches the classical dimension formula",
    "dualpair.moment_lift": "T*T = X, TT* = X~, T(V_j) in V~_(j+1), rank pattern, Jordan type of TT* is the lifted tableau",
    "dualpair.sigma": "<J_T(R1,R1~), J_T(R2,R2~)> = -kappa_-1(R1,R2) + kappa~_-1(R1~,R2~); J_T bijective onto W",
    "hermitian.random": "kappa symmetric and ad-invariant, (ST)* = T*S*, T** = -T across the pair",
    "sl2.heisenberg_roundtrip": "exp(T) exp(Z) factors back into (T, Z)",
    "sl2.alpha_gamma_hom": "alpha_gamma is a homomorphism into the Heisenberg group, both signs",
    "dualpair.alpha_T_hom": "alpha_T is a homomorphism N x N~ -> H(W) with centers -kappa(X,Z) and kappa~(X~,Z~)",
    "dualpair.phi_T": "m~ T = T phi_T(m~), phi_T(m~) in M_X, phi_T multiplicative",
    "dualpair.cross_terms": "<T R, R~ T> = 0",
    "dualpair.nilpotency": "T*T nilpotent iff TT* nilpotent",
    "dualpair.stable_range": "stable range lift is injective with T*T = X",
    "dualpair.dominance": "maps over the orbit closure land in partitions dominated by the lifted one",
}


@dataclass
class CheckResult:
    id: str
    ok: bool
    witness: object = None
    kind: str = field(default="")

    def to_json(self):
        kind = self.kind or self.id.split("/")[0]
        out = {"id": self.id, "paper_anchor": ANCHORS.get(kind, kind), "status": "pass" if self.ok else "fail"}
        if self.witness is not None and not self.ok:
            out["witness"] = self.witness
        return out


def _result(kind, name, ok, witness=None):
    return CheckResult("%s/%s" % (kind, name), bool(ok), witness, kind)


def _guard(kind, name, fn):
    """Run fn() -> (ok, witness); an exception is a failure with its message as witness."""
    try:
        ok, witness = fn()
    except Exception as exc:  # a crash inside a check is reported, not raised
        ok, witness = False, {"error": "%s: %s" % (type(exc).__name__, exc)}
    return _result(kind, name, ok, witness)


def classical_lie_dim(module):
    n, alg, eps = module.dim, module.algebra, module.epsilon
    if alg.kind == "field":
        return n * (n - 1) // 2 if eps == 1 else n * (n + 1) // 2
    if alg.kind == "quadratic":
        return n * n
    return n * (2 * n + 1) if eps == 1 else n * (2 * n - 1)


def _closure_pairs(grading, limit=400):
    items = [(i, Z) for i, basis in grading.g_weights.items() for Z in basis]
    pairs = [(a, b) for a in range(len(items)) for b in range(len(items))]
    stride = max(1, len(pairs) // limit)
    return items, pairs[::stride]


def _grading_check(V, gamma, grading):
    bad = []
    if sum(len(ix) for ix in grading.V_weights.values()) != V.dim:
        bad.append("V dims")
    if sum(len(b) for b in grading.g_weights.values()) != classical_lie_dim(V):
        bad.append("g dims")
    items, pairs = _closure_pairs(grading)
    for a, b in pairs:
        (i, S), (j, T) = items[a], items[b]
        if not grading.degrees_of(bracket(S, T)) <= {i + j}:
            bad.append("bracket %d,%d" % (i, j))
            break
    for i, basis in grading.g_weights.items():
        if basis and not grading.degrees_of(basis[0]) <= {i}:
            bad.append("g_%d support" % i)
    return not bad, {"failed": bad} if bad else None


def _weight_forms_check(gamma, grading):
    forms = weight_forms(gamma, grading)
    G = grading.module.gram
    bad = []
    for i in grading.V_weights:
        if rank(forms[i]) != forms[i].rows:
            bad.append("B_%d" % i)
        blk = G.sub(grading.indices(i), grading.indices(-i))
        if rank(blk) != blk.rows:
            bad.append("pairing %d" % i)
    return not bad, {"failed": bad} if bad else None


def _kappa_check(gamma, grading, limit=60):
    basis = grading.g_basis(-1)
    if not basis:
        return True, None
    g = kappa_minus1_gram(grading, basis)
    b = len(basis)
    bad = []
    if any(g[i, j] != -g[j, i] for i in range(b) for j in range(b)):
        bad.append("antisymmetry")
    if qrank(g) != b:
        bad.append("degenerate")
    stride = max(1, b * b // limit)
    for k in range(0, b * b, stride):
        S, T = basis[k // b], basis[k % b]
        if kappa_minus1(gamma, grading, S, T, check=False) != kappa_minus1_alt(gamma, grading, S, T):
            bad.append("two expressions differ")
            break
    return not bad, {"failed": bad} if bad else None


def _character_check(grading, limit=200):
    u = grading.u_basis
    if not u:
        return True, None
    chi = character_functional(grading)
    pairs = [(a, b) for a in range(len(u)) for b in range(a + 1, len(u))]
    stride = max(1, len(pairs) // limit)
    for a, b in pairs[::stride]:
        v = chi(bracket(u[a], u[b]))
        if v != 0:
            return False, {"pair": [a, b], "value": rat_str(v)}
    return True, None


def _moment_lift_check(lift):
    checks = lift.checks()
    ok = all(checks.values())
    return ok, None if ok else {"checks": checks}


def _sigma_check(lift):
    rep = sigma_report(lift)
    ok = rep["dims_match"] and rep["images_in_W"] and rep["bijective"] and rep["gram_matches"]
    return ok, None if ok else rep


def _jordan_check(gamma, tab):
    jt = jordan_type(gamma.X)
    return jt == tab.partition, {"jordan_type": jt, "partition": tab.partition}


def _relations_check(gamma):
    bad = gamma.failed_relations()
    return not bad, {"failed": bad} if bad else None


def _sign_law_check(tab, eps, V):
    ok = V.epsilon == eps and (not tab.rows or not is_admissible(tab, -eps))
    return ok, None


DETERMINISTIC = (
    "tableaux.admissible",
    "tableaux.sign_law",
    "tableaux.jordan_roundtrip",
    "tableaux.tableau_roundtrip",
    "sl2.relations",
    "sl2.grading",
    "sl2.weight_forms",
    "sl2.sign_identity",
    "sl2.kappa_minus1",
    "sl2.character",
    "sl2.mx_dimension",
    "hermitian.lie_dim",
    "dualpair.moment_lift",
    "dualpair.sigma",
)


def tableau_checks(name, tab, eps, which=None, dim_Vtilde=None):
    """Deterministic checks for one tableau (all of DETERMINISTIC unless `which` is given)."""
    which = set(DETERMINISTIC if which is None else which)
    out = []
    if "tableaux.admissible" in which:
        out.append(_result("tableaux.admissible", name, is_admissible(tab, eps)))
    try:
        V, gamma = build_module(tab, eps)
    except Exception as exc:
        return out + [_result(k, name, False, {"error": str(exc)}) for k in sorted(which - {"tableaux.admissible"})]
    state = {}

    def grading():
        if "grading" not in state:
            state["grading"] = grade(gamma)
        return state["grading"]

    def lift():
        if "lift" not in state:
            state["lift"] = build_moment_lift(tab, eps, dim_Vtilde)
        return state["lift"]

    table = {
        "tableaux.sign_law": lambda: _sign_law_check(tab, eps, V),
        "tableaux.jordan_roundtrip": lambda: _jordan_check(gamma, tab),
        "tableaux.tableau_roundtrip": lambda: (tableau_of_triple(gamma, grading()) == tab, None),
        "sl2.relations": lambda: _relations_check(gamma),
        "sl2.grading": lambda: _grading_check(V, gamma, grading()),
        "sl2.weight_forms": lambda: _weight_forms_check(gamma, grading()),
        "sl2.sign_identity": lambda: (lambda bad: (not bad, {"blocks": bad} if bad else None))(
            sign_identity_failures(gamma, grading())),
        "sl2.kappa_minus1": lambda: _kappa_check(gamma, grading()),
        "sl2.character": lambda: _character_check(grading()),
        "sl2.mx_dimension": lambda: (lambda r: (r["equal"], r))(mx_dimension_report(gamma, grading(), tab)),
        "hermitian.lie_dim": lambda: (lambda d: (d == classical_lie_dim(V), {"dim": d}))(
            sum(len(b) for b in grading().g_weights.values())),
        "dualpair.moment_lift": lambda: _moment_lift_check(lift()),
        "dualpair.sigma": lambda: _sigma_check(lift()),
    }
    for kind in DETERMINISTIC:
        if kind in which and kind in table:
            out.append(_guard(kind, name, table[kind]))
    return out


# -- randomized suites ---------------------------------------------------------------

def _sampled(kind, pool, samples, seed, body):
    """Run body(rng, instance) for `samples` draws cycling through the pool; one record per suite."""
    if not pool:
        return _result(kind, "all", True, None)
    failures = 0
    first = None
    for i in range(samples):
        name, inst = pool[i % len(pool)]
        rng = rng_for(seed, "%s/%d" % (kind, i))
        try:
            ok, wit = body(rng, inst)
        except Exception as exc:
            ok, wit = False, {"error": "%s: %s" % (type(exc).__name__, exc)}
        if not ok:
            failures += 1
            if first is None:
                first = {"sample": i, "instance": name, "detail": wit}
    return _result(kind, "all", failures == 0, {"failures": failures, "first": first} if failures else None)


def _hermitian_body(bound):
    def body(rng, lift):
        V, Vt = lift.V, lift.Vtilde
        basis = _cached(lift, "gV", lambda: lie_algebra_basis(V))
        T, S, Z = (rand_lie_element(rng, V, bound, basis) for _ in range(3))
        bad = []
        if kappa(T, S, V) != kappa(S, T, V):
            bad.append("symmetry")
        if kappa(bracket(Z, T), S, V) + kappa(T, bracket(Z, S), V) != 0:
            bad.append("invariance")
        N = rand_combination(rng, lift.grading.n_basis, bound, V.algebra, (V.dim, V.dim))
        g = nilpotent_exp(N)
        gi = nilpotent_exp(-N)
        if kappa(g @ T @ gi, g @ S @ gi, V) != kappa(T, S, V):
            bad.append("ad invariance")
        A = rand_dmatrix(rng, V.algebra, Vt.dim, V.dim, bound)
        B = rand_dmatrix(rng, V.algebra, V.dim, Vt.dim, bound)
        if not adjoint(A @ B, Vt, Vt) == adjoint(B, Vt, V) @ adjoint(A, V, Vt):
            bad.append("product adjoint")
        if not adjoint(adjoint(A, V, Vt), Vt, V) == -A:
            bad.append("double adjoint")
        return not bad, {"failed": bad} if bad else None
    return body


def _cached(obj, key, fn):
    store = obj.__dict__.setdefault("_check_cache", {})
    if key not in store:
        store[key] = fn()
    return store[key]


def _roundtrip_body(bound):
    def body(rng, lift):
        gr = lift.grading
        n = gr.dim
        T = rand_combination(rng, gr.g_basis(-1), bound, gr.algebra, (n, n))
        Z = rand_combination(rng, gr.u_basis, bound, gr.algebra, (n, n))
        T2, Z2 = heisenberg_coordinates(nilpotent_exp(T) @ nilpotent_exp(Z), gr)
        return T2 == T and Z2 == Z, None
    return body


def _alpha_gamma_body(bound):
    def body(rng, inst):
        lift, side = inst
        gr = lift.grading if side == "V" else lift.grading_t
        gamma = lift.gamma if side == "V" else lift.gamma_t
        n1, n2 = rand_n_element(rng, gr, bound), rand_n_element(rng, gr, bound)
        bad = []
        for sign in (1, -1):
            H = heisenberg_group(gr, sign)
            lhs = alpha_gamma(n1 @ n2, gamma, gr, sign)
            rhs = H.mul(alpha_gamma(n1, gamma, gr, sign), alpha_gamma(n2, gamma, gr, sign))
            if not (lhs.vector == rhs.vector and lhs.center == rhs.center):
                bad.append(sign)
        return not bad, {"signs": bad} if bad else None
    return body


def _alpha_T_body(bound):
    def body(rng, lift):
        W = _cached(lift, "W", lambda: build_wspace(lift))
        HW = W.heisenberg_group()
        from .dualpair import alpha_T

        n1, n2 = rand_n_element(rng, lift.grading, bound), rand_n_element(rng, lift.grading, bound)
        m1, m2 = rand_n_element(rng, lift.grading_t, bound), rand_n_element(rng, lift.grading_t, bound)
        lhs = alpha_T(lift, n1 @ n2, m1 @ m2)
        rhs = HW.mul(alpha_T(lift, n1, m1), alpha_T(lift, n2, m2))
        bad = []
        if not (lhs.vector == rhs.vector and lhs.center == rhs.center):
            bad.append("homomorphism")
        if not W.contains(lhs.vector):
            bad.append("image outside W")
        V, Vt = lift.V, lift.Vtilde
        e, et = V.identity(), Vt.identity()
        Z = rand_combination(rng, lift.grading.u_basis, bound, V.algebra, (V.dim, V.dim))
        a = alpha_T(lift, nilpotent_exp(Z), et)
        if not (a.vector.is_zero() and a.center == -kappa(lift.gamma.X, Z, V)):
            bad.append("U center")
        Zt = rand_combination(rng, lift.grading_t.u_basis, bound, V.algebra, (Vt.dim, Vt.dim))
        a = alpha_T(lift, e, nilpotent_exp(Zt))
        if not (a.vector.is_zero() and a.center == kappa(lift.gamma_t.X, Zt, Vt)):
            bad.append("U~ center")
        return not bad, {"failed": bad} if bad else None
    return body


def _phi_body(bound):
    def body(rng, lift):
        m1, m2 = rand_mtilde(rng, lift, bound), rand_mtilde(rng, lift, bound)
        p1, p2 = phi_T(lift, m1), phi_T(lift, m2)
        bad = []
        if not m1 @ lift.T == lift.T @ p1:
            bad.append("intertwining")
        if not phi_T(lift, m1 @ m2) == p1 @ p2:
            bad.append("multiplicative")
        if not phi_T(lift, lift.Vtilde.identity()) == lift.V.identity():
            bad.append("identity")
        return not bad, {"failed": bad} if bad else None
    return body


def _cross_body(bound):
    def body(rng, lift):
        V, Vt = lift.V, lift.Vtilde
        R = rand_combination(rng, lift.grading.g_basis(-1), bound, V.algebra, (V.dim, V.dim))
        Rt = rand_combination(rng, lift.grading_t.g_basis(-1), bound, V.algebra, (Vt.dim, Vt.dim))
        v = lift.pair.pairing(lift.T @ R, Rt @ lift.T)
        return v == 0, None if v == 0 else {"value": rat_str(v)}
    return body


def _nilpotency_body(bound):
    def body(rng, lift):
        if rng.random() < 0.5:
            # a conjugate of a lift, so both sides are nilpotent
            g = rand_isometry(rng, lift.V, bound)
            gt = rand_isometry(rng, lift.Vtilde, bound)
            pair, T = lift.pair, gt @ lift.T @ g
        else:
            eps = rng.choice((1, -1))
            alg = lift.V.algebra
            if alg.kind == "field" and eps == -1:
                a = 2 * rng.randint(1, 2)
                b = rng.randint(a, 10 - a)
            elif alg.kind == "field":
                a = rng.randint(1, 4)
                b = 2 * rng.randint((a + 1) // 2, (10 - a) // 2)
            else:
                a = rng.randint(1, 4)
                b = rng.randint(a, 10 - a)
            V = rand_hermitian_module(rng, alg, a, eps, bound)
            Vt = rand_hermitian_module(rng, alg, b, -eps, bound)
            pair = DualPair(V, Vt)
            T = rand_dmatrix(rng, alg, b, a, bound, density=rng.choice((0.3, 1.0)))
        x, xt = moment(T, pair)
        ok = (nilpotency_index(x) is None) == (nilpotency_index(xt) is None)
        ok = ok and is_lie_algebra_element(x, pair.V) and is_lie_algebra_element(xt, pair.Vtilde)
        return ok, None
    return body


def _dominance_body(bound):
    def body(rng, lift):
        X = lift.gamma.X
        n = X.rows
        # q(X) with random rational coefficients keeps T*T = X q(-X) q(X) in the closure of the orbit
        q = DMatrix.identity(X.algebra, n) * rand_rational(rng, bound)
        P = DMatrix.identity(X.algebra, n)
        for _ in range(rng.randint(0, 3)):
            P = P @ X
            q = q + P * rand_rational(rng, bound)
        g = rand_isometry(rng, lift.V, bound)
        gt = rand_isometry(rng, lift.Vtilde, bound)
        T = gt @ lift.T @ q @ g
        x, xt = moment(T, lift.pair)
        below = dominates(lift.tableau.partition, jordan_type(x))
        lifted = dominates(lift.tableau_t.partition, jordan_type(xt))
        return below and lifted, None if below and lifted else {"jordan": jordan_type(xt)}
    return body


def stable_range_samples(samples, seed, bound=10, max_dim=6, max_dim_tilde=14):
    """Random symplectic V (dim <= max_dim) and orthogonal V~ (dim <= max_dim_tilde) in the
    stable range, with random X in g(V): half nilpotent (conjugates of built orbits), half generic."""
    from .corpus import CYCLE, admissible_tableaux
    from .dlinalg import inverse
    from .scalars import FIELD

    nil_pool = [(t, e) for _, t, e in admissible_tableaux(max_dim) if e == -1]

    def body(rng, _):
        if rng.random() < 0.5:
            tab, _e = rng.choice(nil_pool)
            V, gamma = build_module(tab, -1)
            g = rand_isometry(rng, V, bound)
            X = g @ gamma.X @ inverse(g)
        else:
            n = 2 * rng.randint(1, max_dim // 2)
            V = rand_hermitian_module(rng, FIELD, n, -1, bound)
            X = rand_lie_element(rng, V, bound)
        n = V.dim
        extra = rng.randint(0, max_dim_tilde - 2 * n)
        entries = []
        for k in range(n):
            c = rng.choice(CYCLE)
            entries += [c, -c]
        entries += [rng.choice(CYCLE) for _ in range(extra)]
        rng.shuffle(entries)
        Vt = HermitianModule.diagonal(entries, 1)
        pair = DualPair(V, Vt)
        T = stable_range_lift(X, pair)
        ok = rank(T) == n and moment(T, pair)[0] == X
        return ok, None
    return _sampled("dualpair.stable_range", [("random", None)], samples, seed, body)


def random_suite_tasks(lifts, samples, seed, bound=10, which=None):
    """Randomized suites over a pool of (name, MomentLift)."""
    pool = list(lifts)
    with_n = [(nm + "/V", (l, "V")) for nm, l in pool if l.grading.n_basis] + \
             [(nm + "/Vt", (l, "Vt")) for nm, l in pool if l.grading_t.n_basis]
    with_W = [(nm, l) for nm, l in pool if build_wspace(l).dim]
    suites = {
        "hermitian.random": lambda: _sampled("hermitian.random", pool, samples, seed, _hermitian_body(bound)),
        "sl2.heisenberg_roundtrip": lambda: _sampled("sl2.heisenberg_roundtrip", [p for p in pool if p[1].grading.n_basis],
                                                     samples, seed, _roundtrip_body(bound)),
        "sl2.alpha_gamma_hom": lambda: _sampled("sl2.alpha_gamma_hom", with_n, samples, seed, _alpha_gamma_body(bound)),
        "dualpair.alpha_T_hom": lambda: _sampled("dualpair.alpha_T_hom", with_W, samples, seed, _alpha_T_body(bound)),
        "dualpair.phi_T": lambda: _sampled("dualpair.phi_T", pool, samples, seed, _phi_body(bound)),
        "dualpair.cross_terms": lambda: _sampled("dualpair.cross_terms", with_W, samples, seed, _cross_body(bound)),
        "dualpair.nilpotency": lambda: _sampled("dualpair.nilpotency", pool, samples, seed, _nilpotency_body(bound)),
        "dualpair.dominance": lambda: _sampled("dualpair.dominance", pool, samples, seed, _dominance_body(bound)),
        "dualpair.stable_range": lambda: stable_range_samples(max(1, samples // 5), seed, bound),
    }
    names = sorted(suites if which is None else which)
    return [suites[n] for n in names]
