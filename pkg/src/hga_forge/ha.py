"""Associator homotopy on triple tensors.

The two ways of collapsing a triple tensor through the diagonal family
(pair off the left factors first, or the right ones) agree only up to
homotopy.  This module enumerates the summands of that homotopy and
computes their signs.

Each summand is a word U*V in three letter families a, b, c (slot
components 0, 1, 2 of a width-3 family).  The building blocks:

  c-product   product of one or more c variables (proper if > 1)
  b-term      E_m(b_j; ...) with m >= 0, all arguments c-products
  bc-product  one or more b-terms, closed by the variable c_j that
              matches the head of the last b-term
  a-term      E_m(a_i; ...) with arguments b-terms, c-products or
              bc-products
  U           product of a-terms and top-level b-terms, ending with
              an a-term
  V           a single bc-product

The admissible words satisfy:

  (i)   each of the 3n variables occurs exactly once; within each
        letter the indices increase textually, and a_i comes before
        b_i, b_i before c_i;
  (ii)  the head of every E-term has a larger index than everything
        inside its arguments;
  (iii) a top-level b-term with head b_i stands directly after the
        a-term with head a_i;
  (iv)  writing J_a, J_b, J_c for the sets of b-indices heading a
        bare b-term argument of an a-term, a top-level b-term, and a
        b-term inside a bc-product, the three sets partition 1..n
        with J_a nonempty, J_a u J_b = {1..v} for v = max J_a, and
        J_a \ {v} = the set of j whose c_j sits in a c-product as a
        non-last factor.  Hence J_c = {v+1..n}.

Summand trees use hashable tuples:

  ("A", i, args)        a-term, args a tuple of C/B/BC nodes
  ("B", j, cprods)      b-term, cprods a tuple of C nodes
  ("C", idxs)           c-product, idxs the 1-based variable indices
  ("BC", bterms, tr)    bc-product with trailing variable c_tr

A term is a tuple of top-level A/B/BC nodes whose last entry is the
BC node V.

The sign exponent is defined recursively over |J_a|.  For J_a = {v}
it is n plus (sum of q's)*(p-m+1) for every bc-product sitting at
position m of a p-ary a-term, plus ehat + m + q*(p-m) for the b_v
term at position m of its p-ary host, where ehat is the operadic
degree of the top-level factors standing before the host.  For
|J_a| > 1 the exponent is obtained from the word with mu = min J_a
demoted to a top-level b-term; the correction is etilde + m +
q*(p_i-m) + ehat where etilde is the operadic degree of everything
before the host a_i-term, and ehat is the exponent of the summand of
the differential of the demoted word that re-merges the split-off
argument c_mu with the product following it.
"""

from .families import Family, family_from_recipes

__all__ = [
    "ha_trees", "ha_count", "ha_recipes", "ha_family",
    "term_exponent", "validate_term", "tree_to_product",
]


# ---------------------------------------------------------------------------
# enumeration
#
# State while laying out a word textually:
#   beta     next b index to be consumed (b's appear in order)
#   gamma    next c index
#   cls      tuple of 'a'/'b'/'c' classes for b_1..b_{beta-1}
#   runmax   largest J_a index so far (0 if none)
#   nomore   True once J_a is closed: no further bare b-term may appear
#   needmore True while the constraints force a later J_a index


def _cproduct_choices(state, limit):
    """All c-products starting at the current gamma with indices < limit."""
    beta, gamma, cls, runmax, nomore, needmore = state
    out = []
    idxs = []
    g = gamma
    ndm = needmore
    while g < beta and g < limit:
        k = cls[g - 1]
        if k == "a":
            # c_g may close the product only if g is the final max of J_a
            if g == runmax and not ndm:
                out.append((("C", tuple(idxs + [g])),
                            (beta, g + 1, cls, runmax, True, ndm)))
            # continuing makes c_g a non-last factor, so g must lie in
            # J_a and, if it is the running max, a later bare b-term is
            # still required
            if g == runmax:
                if nomore:
                    break
                ndm = True
        else:
            out.append((("C", tuple(idxs + [g])),
                        (beta, g + 1, cls, runmax, nomore, ndm)))
            # a non-last factor must belong to J_a
            break
        idxs.append(g)
        g += 1
    return out


def _cproduct_lists(state, limit):
    """Sequences of zero or more c-products (argument lists of b-terms)."""
    out = [((), state)]
    frontier = [((), state)]
    while frontier:
        nxt = []
        for seq, st in frontier:
            for cp, st2 in _cproduct_choices(st, limit):
                item = (seq + (cp,), st2)
                out.append(item)
                nxt.append(item)
        frontier = nxt
    return out


def _bterm_choices(state, limit, klass):
    """b-terms headed by the next b, consuming it under the given class."""
    beta, gamma, cls, runmax, nomore, needmore = state
    if beta >= limit:
        return []
    j = beta
    if klass == "a":
        if nomore:
            return []
        st = (beta + 1, gamma, cls + ("a",), j, False, False)
    elif klass == "b":
        if nomore:
            return []
        st = (beta + 1, gamma, cls + ("b",), runmax, False, True)
    else:
        if needmore or runmax == 0:
            return []
        st = (beta + 1, gamma, cls + ("c",), runmax, True, False)
    out = []
    for cps, st2 in _cproduct_lists(st, j):
        out.append((("B", j, cps), st2))
    return out


def _bcproduct_choices(state, limit, full):
    """bc-products.  With full=True all remaining b's must be consumed."""
    out = []
    frontier = []
    for bt, st in _bterm_choices(state, limit, "c"):
        frontier.append(((bt,), st))
    while frontier:
        nxt = []
        for bterms, st in frontier:
            beta, gamma, cls, runmax, nomore, needmore = st
            last = bterms[-1][1]
            if last < limit and (not full or last == limit - 1):
                # close with the trailing variable c_last
                if gamma == last:
                    out.append((("BC", bterms, last),
                                (beta, gamma + 1, cls, runmax,
                                 nomore, needmore)))
            if beta < limit:
                for bt, st2 in _bterm_choices(st, limit, "c"):
                    nxt.append((bterms + (bt,), st2))
        frontier = nxt
    return out


def _aterm_choices(state, i):
    """a-terms headed by a_i: argument tuples laid out left to right."""
    out = []
    frontier = [((), state)]
    while frontier:
        nxt = []
        for args, st in frontier:
            out.append((("A", i, args), st))
            for cp, st2 in _cproduct_choices(st, i):
                nxt.append((args + (cp,), st2))
            beta = st[0]
            if beta < i:
                for bt, st2 in _bterm_choices(st, i, "a"):
                    nxt.append((args + (bt,), st2))
                for bc, st2 in _bcproduct_choices(st, i, False):
                    nxt.append((args + (bc,), st2))
        frontier = nxt
    return out


def ha_trees(n: int) -> list:
    """All admissible summand trees at stage n."""
    results: list = []
    init = (1, 1, (), 0, False, False)

    def place(i, state, items):
        if i > n:
            beta = state[0]
            if beta > n:
                return
            for v, st in _bcproduct_choices(state, n + 1, True):
                beta2, gamma2, _, _, _, ndm = st
                if beta2 == n + 1 and gamma2 == n + 1 and not ndm:
                    results.append(tuple(items + [v]))
            return
        for at, st in _aterm_choices(state, i):
            items.append(at)
            place(i + 1, st, items)
            if st[0] == i:
                # top-level b-term is pinned to sit right after a_i
                for bt, st2 in _bterm_choices(st, n + 1, "b"):
                    if bt[1] == i:
                        items.append(bt)
                        place(i + 1, st2, items)
                        items.pop()
            items.pop()

    place(1, init, [])
    return results


def ha_count(n: int) -> int:
    return len(ha_trees(n))


# ---------------------------------------------------------------------------
# independent validation (used by the test-suite)


def _walk_letters(node, out):
    kind = node[0]
    if kind == "A":
        out.append(("a", node[1]))
        for arg in node[2]:
            _walk_letters(arg, out)
    elif kind == "B":
        out.append(("b", node[1]))
        for cp in node[2]:
            _walk_letters(cp, out)
    elif kind == "C":
        for g in node[1]:
            out.append(("c", g))
    elif kind == "BC":
        for bt in node[1]:
            _walk_letters(bt, out)
        out.append(("c", node[2]))
    else:
        raise ValueError(kind)


def _max_index(node) -> int:
    seq: list = []
    _walk_letters(node, seq)
    return max(g for _, g in seq)


def validate_term(term, n: int) -> None:
    """Re-checks every admissibility condition from scratch."""
    seq: list = []
    for item in term:
        _walk_letters(item, seq)
    for letter in "abc":
        idxs = [g for lt, g in seq if lt == letter]
        if idxs != list(range(1, n + 1)):
            raise AssertionError(f"{letter} indices {idxs}")
    pos = {pair: t for t, pair in enumerate(seq)}
    for i in range(1, n + 1):
        if not pos[("a", i)] < pos[("b", i)] < pos[("c", i)]:
            raise AssertionError(f"letter order at index {i}")

    def check_heads(node):
        kind = node[0]
        if kind == "A":
            for arg in node[2]:
                if arg[0] != "C" and not node[1] > _max_index(arg):
                    raise AssertionError("head not dominant")
                if arg[0] == "C" and max(arg[1]) >= node[1]:
                    raise AssertionError("head not dominant")
                check_heads(arg)
        elif kind == "B":
            for cp in node[2]:
                if max(cp[1]) >= node[1]:
                    raise AssertionError("head not dominant")
        elif kind == "BC":
            for bt in node[1]:
                check_heads(bt)
            if node[2] != node[1][-1][1]:
                raise AssertionError("trailing c does not match")

    for item in term:
        check_heads(item)

    if term[-1][0] != "BC":
        raise AssertionError("word does not end with a bc-product")
    for t, item in enumerate(term[:-1]):
        if item[0] == "BC":
            raise AssertionError("bc-product before the end")
        if item[0] == "B":
            prev = term[t - 1] if t else None
            if prev is None or prev[0] != "A" or prev[1] != item[1]:
                raise AssertionError("stray top-level b-term")

    ja, jb, jc = set(), set(), set()
    for item in term:
        if item[0] == "B":
            jb.add(item[1])
        elif item[0] == "BC":
            jc.update(bt[1] for bt in item[1])
        else:
            for arg in item[2]:
                if arg[0] == "B":
                    ja.add(arg[1])
                elif arg[0] == "BC":
                    jc.update(bt[1] for bt in arg[1])
    if sorted(ja | jb | jc) != list(range(1, n + 1)):
        raise AssertionError("classes do not partition")
    if len(ja) + len(jb) + len(jc) != n:
        raise AssertionError("classes overlap")
    if not ja:
        raise AssertionError("no bare b-term argument")
    v = max(ja)
    if ja | jb != set(range(1, v + 1)):
        raise AssertionError("J_a u J_b is not an initial segment")
    if jc != set(range(v + 1, n + 1)):
        raise AssertionError("J_c is not the final segment")

    nonlast: set = set()

    def collect_cprods(node):
        kind = node[0]
        if kind == "C":
            nonlast.update(node[1][:-1])
        elif kind == "A":
            for arg in node[2]:
                collect_cprods(arg)
        elif kind == "B":
            for cp in node[2]:
                collect_cprods(cp)
        elif kind == "BC":
            for bt in node[1]:
                collect_cprods(bt)

    for item in term:
        collect_cprods(item)
    if nonlast != ja - {v}:
        raise AssertionError("non-last c factors do not match J_a")


# ---------------------------------------------------------------------------
# sign exponent


def _deg(node) -> int:
    """Operadic degree of a node viewed as a function of its inputs."""
    kind = node[0]
    if kind == "C":
        return 0
    if kind == "B":
        return len(node[2])
    if kind == "BC":
        return sum(_deg(bt) for bt in node[1])
    if kind == "A":
        return len(node[2]) + sum(_deg(arg) for arg in node[2])
    raise ValueError(kind)


def _ja_entries(term):
    """Bare b-term arguments as (item_idx, 1-based arg position, node)."""
    out = []
    for t, item in enumerate(term):
        if item[0] != "A":
            continue
        for m, arg in enumerate(item[2], start=1):
            if arg[0] == "B":
                out.append((t, m, arg))
    return out


def _split_cmu(term, mu):
    """Splits the proper c-product starting with c_mu into c_mu and the
    rest.  Returns the new term and the differential-summand exponent
    that would merge the two arguments back together."""

    def split_list(cprods):
        for k, cp in enumerate(cprods):
            if cp[0] == "C" and cp[1][0] == mu:
                if len(cp[1]) < 2:
                    raise AssertionError("c_mu product is not proper")
                new = (cprods[:k] + (("C", (mu,)), ("C", cp[1][1:]))
                       + cprods[k + 1:])
                return new, k + 1
        return None, 0

    items = list(term)
    pref = 0
    for t, item in enumerate(items):
        if item[0] == "A":
            p = len(item[2])
            for j, arg in enumerate(item[2]):
                if arg[0] == "C" and arg[1][0] == mu:
                    if len(arg[1]) < 2:
                        raise AssertionError("c_mu product is not proper")
                    args = (item[2][:j] + (("C", (mu,)), ("C", arg[1][1:]))
                            + item[2][j + 1:])
                    items[t] = ("A", item[1], args)
                    return tuple(items), pref + j + 1
                if arg[0] == "B":
                    new, mp = split_list(arg[2])
                    if new is not None:
                        cross = p + sum(_deg(a) for a in item[2][:j])
                        args = (item[2][:j] + (("B", arg[1], new),)
                                + item[2][j + 1:])
                        items[t] = ("A", item[1], args)
                        return tuple(items), pref + cross + mp
                if arg[0] == "BC":
                    for f, bt in enumerate(arg[1]):
                        new, mp = split_list(bt[2])
                        if new is not None:
                            cross = p + sum(_deg(a) for a in item[2][:j])
                            cross += sum(_deg(b) for b in arg[1][:f])
                            bterms = (arg[1][:f] + (("B", bt[1], new),)
                                      + arg[1][f + 1:])
                            args = (item[2][:j] + (("BC", bterms, arg[2]),)
                                    + item[2][j + 1:])
                            items[t] = ("A", item[1], args)
                            return tuple(items), pref + cross + mp
            pref += _deg(item)
        elif item[0] == "B":
            new, mp = split_list(item[2])
            if new is not None:
                items[t] = ("B", item[1], new)
                return tuple(items), pref + mp
            pref += _deg(item)
        else:
            for f, bt in enumerate(item[1]):
                new, mp = split_list(bt[2])
                if new is not None:
                    cross = sum(_deg(b) for b in item[1][:f])
                    bterms = (item[1][:f] + (("B", bt[1], new),)
                              + item[1][f + 1:])
                    items[t] = ("BC", bterms, item[2])
                    return tuple(items), pref + cross + mp
            pref += _deg(item)
    raise AssertionError(f"c_{mu} product not found")


_EXP_MEMO: dict = {}


def term_exponent(term, n: int) -> int:
    """Sign exponent of a summand, mod 2."""
    key = (n, term)
    val = _EXP_MEMO.get(key)
    if val is not None:
        return val
    ja = _ja_entries(term)
    if not ja:
        raise AssertionError("summand without bare b-term argument")
    if len(ja) == 1:
        t_i, m, bnode = ja[0]
        host = term[t_i]
        p = len(host[2])
        q = len(bnode[2])
        ehat = sum(_deg(it) for it in term[:t_i])
        eps = n + ehat + m + q * (p - m)
        for item in term:
            if item[0] != "A":
                continue
            pp = len(item[2])
            for mm, arg in enumerate(item[2], start=1):
                if arg[0] == "BC":
                    eps += _deg(arg) * (pp - mm + 1)
    else:
        t_i, m, bnode = ja[0]
        mu = bnode[1]
        host = term[t_i]
        i = host[1]
        p_i = len(host[2])
        q = len(bnode[2])
        etilde = sum(_deg(it) for it in term[:t_i])
        items = list(term)
        t_mu = next(t for t, it in enumerate(items)
                    if it[0] == "A" and it[1] == mu)
        moved: list = []
        for t in range(t_mu + 1, t_i):
            it = items[t]
            if it[0] != "A" or any(a[0] != "C" for a in it[2]):
                raise AssertionError("unexpected factor before host")
            moved.extend(it[2])
            items[t] = ("A", it[1], ())
        pre = host[2][:m - 1]
        if any(a[0] != "C" for a in pre):
            raise AssertionError("non-c argument before the bare b-term")
        items[t_mu] = ("A", mu, items[t_mu][2] + tuple(moved) + pre)
        items[t_i] = ("A", i, host[2][m:])
        items.insert(t_mu + 1, bnode)
        demoted, ehat = _split_cmu(tuple(items), mu)
        eps = term_exponent(demoted, n) + etilde + m + q * (p_i - m) + ehat
    val = eps & 1
    _EXP_MEMO[key] = val
    return val


# ---------------------------------------------------------------------------
# recipes


def _bterm_node(bt):
    j, cprods = bt[1], bt[2]
    if not cprods:
        return ("leaf", j - 1, 1)
    args = [[("leaf", g - 1, 2) for g in cp[1]] for cp in cprods]
    return ("E", ("leaf", j - 1, 1), args)


def _arg_product(arg):
    kind = arg[0]
    if kind == "C":
        return [("leaf", g - 1, 2) for g in arg[1]]
    if kind == "B":
        return [_bterm_node(arg)]
    return [_bterm_node(bt) for bt in arg[1]] + [("leaf", arg[2] - 1, 2)]


def tree_to_product(term) -> tuple:
    prod: list = []
    for item in term:
        if item[0] == "A":
            i, args = item[1], item[2]
            if not args:
                prod.append(("leaf", i - 1, 0))
            else:
                prod.append(("E", ("leaf", i - 1, 0),
                             [_arg_product(a) for a in args]))
        elif item[0] == "B":
            prod.append(_bterm_node(item))
        else:
            prod.extend(_arg_product(item))
    return tuple(prod)


def ha_recipes(n: int) -> list:
    return [(term_exponent(t, n), tree_to_product(t)) for t in ha_trees(n)]


def ha_family() -> Family:
    return family_from_recipes("ha", "homotopy", 3, ha_recipes)
