# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Flat-array kernels for leveled-DAFSA algebra, compiled edition.

Line-for-line port of ``_kernels_py``; the two must return byte-identical
canonical automata (same BFS numbering, same wildcard collapse, same
accepting order).  See that module for the representation contract.
"""

import array as pyarray

from cpython cimport array
from cython.operator cimport dereference as deref, preincrement as inc
from libcpp.algorithm cimport sort as cpp_sort, unique as cpp_unique
from libcpp.string cimport string
from libcpp.unordered_map cimport unordered_map
from libcpp.utility cimport pair
from libcpp.vector cimport vector

WILDCARD = -1

cdef int C_WILDCARD = -1

cdef array.array INT_TEMPLATE = pyarray.array("i", [])


cdef array.array _to_array(const vector[int]& v):
    cdef array.array out = array.clone(INT_TEMPLATE, <Py_ssize_t>v.size(), zero=False)
    cdef size_t i
    for i in range(v.size()):
        out.data.as_ints[i] = v[i]
    return out


cdef inline void _key_int(string& key, int v) noexcept:
    key.append(<const char*>&v, sizeof(int))


cdef void _bfs_levels(int n, const vector[vector[int]]& edst, int root, vector[int]& lev):
    lev.assign(n, -1)
    cdef vector[int] order
    order.reserve(n)
    lev[root] = 0
    order.push_back(root)
    cdef size_t head = 0, j
    cdef int s, d, nl
    while head < order.size():
        s = order[head]
        head += 1
        nl = lev[s] + 1
        for j in range(edst[s].size()):
            d = edst[s][j]
            if lev[d] < 0:
                lev[d] = nl
                order.push_back(d)


cdef void _renumber(const vector[vector[int]]& esym, const vector[vector[int]]& edst,
                    const vector[char]& is_final, int root,
                    vector[int]& t_off, vector[int]& t_sym, vector[int]& t_dst,
                    vector[int]& acc):
    cdef int n = <int>esym.size()
    cdef vector[int] old2new = vector[int](n, -1)
    cdef vector[int] order
    order.reserve(n)
    old2new[root] = 0
    order.push_back(root)
    cdef size_t head = 0, j
    cdef int s, d
    while head < order.size():
        s = order[head]
        head += 1
        for j in range(edst[s].size()):
            d = edst[s][j]
            if old2new[d] < 0:
                old2new[d] = <int>order.size()
                order.push_back(d)
    t_off.clear()
    t_sym.clear()
    t_dst.clear()
    acc.clear()
    t_off.push_back(0)
    for head in range(order.size()):
        s = order[head]
        for j in range(esym[s].size()):
            t_sym.push_back(esym[s][j])
            t_dst.push_back(old2new[edst[s][j]])
        t_off.push_back(<int>t_sym.size())
    for s in range(n):
        if is_final[s] and old2new[s] >= 0:
            acc.push_back(old2new[s])
    cpp_sort(acc.begin(), acc.end())


cdef int _minimize_struct(vector[vector[int]]& esym, vector[vector[int]]& edst,
                          vector[char]& is_final, int root, const vector[int]& domains,
                          vector[int]& t_off, vector[int]& t_sym, vector[int]& t_dst,
                          vector[int]& acc) except -1:
    cdef int n = <int>esym.size()
    cdef int L = <int>domains.size()
    cdef vector[int] lev
    _bfs_levels(n, edst, root, lev)

    cdef vector[vector[int]] buckets = vector[vector[int]](L + 1)
    cdef int s, d, lv, k, mid
    cdef size_t j, e
    for s in range(n):
        if lev[s] >= 0:
            buckets[lev[s]].push_back(s)

    cdef vector[char] alive = vector[char](n, 0)
    for lv in range(L, -1, -1):
        for j in range(buckets[lv].size()):
            s = buckets[lv][j]
            if is_final[s]:
                alive[s] = 1
                continue
            for e in range(edst[s].size()):
                if alive[edst[s][e]]:
                    alive[s] = 1
                    break

    cdef vector[int] rep = vector[int](n, -1)
    cdef unordered_map[string, int] sig2id
    cdef vector[vector[int]] m_esym, m_edst
    cdef vector[char] m_final
    cdef vector[int] syms, dsts
    cdef string sig
    cdef bint collapse
    cdef unordered_map[string, int].iterator it
    for lv in range(L, -1, -1):
        k = domains[lv] if lv < L else 0
        for j in range(buckets[lv].size()):
            s = buckets[lv][j]
            if not alive[s]:
                continue
            syms.clear()
            dsts.clear()
            for e in range(esym[s].size()):
                d = edst[s][e]
                if alive[d]:
                    syms.push_back(esym[s][e])
                    dsts.push_back(rep[d])
            if syms.size() == <size_t>k and k > 0 and syms[0] == 0 and syms[syms.size() - 1] == k - 1:
                collapse = True
                for e in range(dsts.size()):
                    if dsts[e] != dsts[0]:
                        collapse = False
                        break
                if collapse:
                    d = dsts[0]
                    syms.assign(1, C_WILDCARD)
                    dsts.assign(1, d)
            sig.clear()
            _key_int(sig, lv)
            sig.push_back(<char>(1 if is_final[s] else 0))
            _key_int(sig, <int>syms.size())
            for e in range(syms.size()):
                _key_int(sig, syms[e])
            for e in range(dsts.size()):
                _key_int(sig, dsts[e])
            it = sig2id.find(sig)
            if it == sig2id.end():
                mid = <int>m_esym.size()
                sig2id[sig] = mid
                m_esym.push_back(syms)
                m_edst.push_back(dsts)
                m_final.push_back(is_final[s])
            else:
                mid = deref(it).second
            rep[s] = mid

    t_off.clear()
    t_sym.clear()
    t_dst.clear()
    acc.clear()
    if rep[root] < 0:
        t_off.push_back(0)
        t_off.push_back(0)
        return 0
    _renumber(m_esym, m_edst, m_final, rep[root], t_off, t_sym, t_dst, acc)
    return 0


cdef tuple _pack(const vector[int]& t_off, const vector[int]& t_sym,
                 const vector[int]& t_dst, const vector[int]& acc):
    return (_to_array(t_off), _to_array(t_sym), _to_array(t_dst), _to_array(acc))


cdef void _domains_to_vec(domains, vector[int]& out):
    out.clear()
    for k in domains:
        out.push_back(<int>k)


def _empty_parts():
    cdef vector[int] off
    cdef vector[int] nothing
    off.push_back(0)
    off.push_back(0)
    return (_to_array(off), _to_array(nothing), _to_array(nothing), _to_array(nothing))


cdef void _unpack(int n, array.array t_off, array.array t_sym, array.array t_dst,
                  array.array acc, vector[vector[int]]& esym, vector[vector[int]]& edst,
                  vector[char]& is_final):
    cdef int* off = t_off.data.as_ints
    cdef int* sym = t_sym.data.as_ints
    cdef int* dst = t_dst.data.as_ints
    cdef int s, j
    esym.assign(n, vector[int]())
    edst.assign(n, vector[int]())
    is_final.assign(n, 0)
    for s in range(n):
        for j in range(off[s], off[s + 1]):
            esym[s].push_back(sym[j])
            edst[s].push_back(dst[j])
    cdef Py_ssize_t q
    cdef int* ap = acc.data.as_ints
    for q in range(len(acc)):
        is_final[ap[q]] = 1


def minimize(int n, array.array t_off, array.array t_sym, array.array t_dst,
             array.array acc, int start, domains):
    cdef vector[vector[int]] esym, edst
    cdef vector[char] is_final
    _unpack(n, t_off, t_sym, t_dst, acc, esym, edst, is_final)
    cdef vector[int] dom
    _domains_to_vec(domains, dom)
    cdef vector[int] o_off, o_sym, o_dst, o_acc
    _minimize_struct(esym, edst, is_final, start, dom, o_off, o_sym, o_dst, o_acc)
    return _pack(o_off, o_sym, o_dst, o_acc)


cdef int _register_child(unordered_map[string, int]& register, vector[vector[int]]& esym,
                         vector[vector[int]]& edst, int child, int depth):
    cdef string sig
    cdef size_t e
    _key_int(sig, depth)
    _key_int(sig, <int>esym[child].size())
    for e in range(esym[child].size()):
        _key_int(sig, esym[child][e])
    for e in range(edst[child].size()):
        _key_int(sig, edst[child][e])
    cdef unordered_map[string, int].iterator it = register.find(sig)
    if it == register.end():
        register[sig] = child
        return child
    return deref(it).second


def compile_sorted(array.array digits, int n_strings, int length, domains):
    cdef vector[int] off_v
    cdef vector[int] nothing
    cdef vector[int] eps_acc
    if length == 0:
        off_v.push_back(0)
        off_v.push_back(0)
        if n_strings:
            eps_acc.push_back(0)
        return (_to_array(off_v), _to_array(nothing), _to_array(nothing), _to_array(eps_acc))
    if n_strings == 0:
        return _empty_parts()

    cdef int* dig = digits.data.as_ints
    cdef vector[int] dom
    _domains_to_vec(domains, dom)

    cdef vector[vector[int]] esym = vector[vector[int]](2)
    cdef vector[vector[int]] edst = vector[vector[int]](2)
    cdef int FINAL = 1
    cdef unordered_map[string, int] register
    cdef vector[int] path
    path.push_back(0)

    cdef int i, d, cpl, symv, parent, child, r, t, base, pbase

    for i in range(n_strings):
        base = i * length
        cpl = 0
        if i:
            pbase = base - length
            while cpl < length and dig[pbase + cpl] == dig[base + cpl]:
                cpl += 1
        while <int>path.size() - 1 > cpl:
            d = <int>path.size() - 1
            child = path[path.size() - 1]
            path.pop_back()
            r = _register_child(register, esym, edst, child, d)
            edst[path[path.size() - 1]][edst[path[path.size() - 1]].size() - 1] = r
        for d in range(cpl, length):
            symv = dig[base + d]
            parent = path[path.size() - 1]
            if d == length - 1:
                esym[parent].push_back(symv)
                edst[parent].push_back(FINAL)
            else:
                t = <int>esym.size()
                esym.push_back(vector[int]())
                edst.push_back(vector[int]())
                esym[parent].push_back(symv)
                edst[parent].push_back(t)
                path.push_back(t)
    while path.size() > 1:
        d = <int>path.size() - 1
        child = path[path.size() - 1]
        path.pop_back()
        r = _register_child(register, esym, edst, child, d)
        edst[path[path.size() - 1]][edst[path[path.size() - 1]].size() - 1] = r

    cdef int n = <int>esym.size()
    cdef vector[int] lev
    _bfs_levels(n, edst, 0, lev)
    cdef int s, k
    cdef size_t e
    cdef bint collapse
    for s in range(n):
        if lev[s] < 0 or lev[s] >= length:
            continue
        k = dom[lev[s]]
        if esym[s].size() == <size_t>k and esym[s][0] == 0 and esym[s][esym[s].size() - 1] == k - 1:
            collapse = True
            for e in range(edst[s].size()):
                if edst[s][e] != edst[s][0]:
                    collapse = False
                    break
            if collapse:
                d = edst[s][0]
                esym[s].assign(1, C_WILDCARD)
                edst[s].assign(1, d)
    cdef vector[char] is_final = vector[char](n, 0)
    is_final[FINAL] = 1
    cdef vector[int] o_off, o_sym, o_dst, o_acc
    _renumber(esym, edst, is_final, 0, o_off, o_sym, o_dst, o_acc)
    return _pack(o_off, o_sym, o_dst, o_acc)


def product(int mode,
            int na, array.array offa, array.array syma, array.array dsta,
            array.array acca, int starta,
            int nb, array.array offb, array.array symb, array.array dstb,
            array.array accb, int startb,
            domains):
    cdef vector[int] dom
    _domains_to_vec(domains, dom)
    cdef int L = <int>dom.size()
    cdef int DEAD = -1

    cdef int* poffa = offa.data.as_ints
    cdef int* psyma = syma.data.as_ints
    cdef int* pdsta = dsta.data.as_ints
    cdef int* poffb = offb.data.as_ints
    cdef int* psymb = symb.data.as_ints
    cdef int* pdstb = dstb.data.as_ints

    cdef vector[char] acca_f = vector[char](na if na > 0 else 1, 0)
    cdef vector[char] accb_f = vector[char](nb if nb > 0 else 1, 0)
    cdef Py_ssize_t q
    for q in range(len(acca)):
        acca_f[acca.data.as_ints[q]] = 1
    for q in range(len(accb)):
        accb_f[accb.data.as_ints[q]] = 1

    cdef unordered_map[long long, int] pair2id
    cdef vector[int] ppa, ppb
    cdef long long enc_base = nb + 2
    pair2id[(<long long>(starta + 1)) * enc_base + (startb + 1)] = 0
    ppa.push_back(starta)
    ppb.push_back(startb)

    cdef vector[vector[int]] e_sym, e_dst
    cdef vector[char] is_final

    cdef unordered_map[int, int] amap, bmap
    cdef vector[int] explicit
    cdef vector[pair[int, int]] out
    cdef pair[int, int] edge
    cdef int i = 0, lv = 0, level_end = 1
    cdef int pa, pb, k, j, v, da, db, cid, awild, bwild, symv
    cdef long long keyv
    cdef size_t e, scan
    cdef bint fa, fb, f, is_live
    cdef unordered_map[long long, int].iterator pit
    cdef unordered_map[int, int].iterator mit

    while i < <int>ppa.size():
        if i == level_end:
            lv += 1
            level_end = <int>ppa.size()
        pa = ppa[i]
        pb = ppb[i]
        if lv == L:
            fa = pa != DEAD and acca_f[pa]
            fb = pb != DEAD and accb_f[pb]
            if mode == 0:
                f = fa and fb
            elif mode == 1:
                f = fa or fb
            else:
                f = fa and not fb
            e_sym.push_back(vector[int]())
            e_dst.push_back(vector[int]())
            is_final.push_back(<char>(1 if f else 0))
            i += 1
            continue
        k = dom[lv]
        amap.clear()
        awild = DEAD
        if pa != DEAD:
            for j in range(poffa[pa], poffa[pa + 1]):
                symv = psyma[j]
                if symv == C_WILDCARD:
                    awild = pdsta[j]
                else:
                    amap[symv] = pdsta[j]
        bmap.clear()
        bwild = DEAD
        if pb != DEAD:
            for j in range(poffb[pb], poffb[pb + 1]):
                symv = psymb[j]
                if symv == C_WILDCARD:
                    bwild = pdstb[j]
                else:
                    bmap[symv] = pdstb[j]
        explicit.clear()
        mit = amap.begin()
        while mit != amap.end():
            explicit.push_back(deref(mit).first)
            inc(mit)
        mit = bmap.begin()
        while mit != bmap.end():
            if amap.find(deref(mit).first) == amap.end():
                explicit.push_back(deref(mit).first)
            inc(mit)
        cpp_sort(explicit.begin(), explicit.end())

        out.clear()
        for e in range(explicit.size()):
            v = explicit[e]
            mit = amap.find(v)
            da = deref(mit).second if mit != amap.end() else awild
            mit = bmap.find(v)
            db = deref(mit).second if mit != bmap.end() else bwild
            if mode == 0:
                is_live = da != DEAD and db != DEAD
            elif mode == 1:
                is_live = da != DEAD or db != DEAD
            else:
                is_live = da != DEAD
            if is_live:
                keyv = (<long long>(da + 1)) * enc_base + (db + 1)
                pit = pair2id.find(keyv)
                if pit == pair2id.end():
                    cid = <int>ppa.size()
                    pair2id[keyv] = cid
                    ppa.push_back(da)
                    ppb.push_back(db)
                else:
                    cid = deref(pit).second
                edge.first = v
                edge.second = cid
                out.push_back(edge)
        if <int>explicit.size() < k:
            da = awild
            db = bwild
            if mode == 0:
                is_live = da != DEAD and db != DEAD
            elif mode == 1:
                is_live = da != DEAD or db != DEAD
            else:
                is_live = da != DEAD
            if is_live:
                keyv = (<long long>(da + 1)) * enc_base + (db + 1)
                pit = pair2id.find(keyv)
                if pit == pair2id.end():
                    cid = <int>ppa.size()
                    pair2id[keyv] = cid
                    ppa.push_back(da)
                    ppb.push_back(db)
                else:
                    cid = deref(pit).second
                if explicit.empty():
                    edge.first = C_WILDCARD
                    edge.second = cid
                    out.push_back(edge)
                else:
                    scan = 0
                    for v in range(k):
                        while scan < explicit.size() and explicit[scan] < v:
                            scan += 1
                        if scan < explicit.size() and explicit[scan] == v:
                            continue
                        edge.first = v
                        edge.second = cid
                        out.push_back(edge)
        cpp_sort(out.begin(), out.end())
        e_sym.push_back(vector[int]())
        e_dst.push_back(vector[int]())
        for e in range(out.size()):
            e_sym[e_sym.size() - 1].push_back(out[e].first)
            e_dst[e_dst.size() - 1].push_back(out[e].second)
        is_final.push_back(0)
        i += 1

    cdef vector[int] o_off, o_sym, o_dst, o_acc
    _minimize_struct(e_sym, e_dst, is_final, 0, dom, o_off, o_sym, o_dst, o_acc)
    return _pack(o_off, o_sym, o_dst, o_acc)


cdef int _determinize_core(int n, const int* off, const int* sym, const int* dst,
                           const vector[char]& acc_f, int start, const vector[int]& dom,
                           vector[int]& o_off, vector[int]& o_sym, vector[int]& o_dst,
                           vector[int]& o_acc) except -1:
    # returns the raw subset-state count and fills the canonical parts
    cdef int L = <int>dom.size()
    cdef unordered_map[string, int] sub2id
    cdef vector[vector[int]] subs
    cdef vector[vector[int]] e_sym, e_dst
    cdef vector[char] is_final

    cdef vector[int] first
    first.push_back(start)
    cdef string key0
    _key_int(key0, start)
    sub2id[key0] = 0
    subs.push_back(first)

    cdef vector[pair[int, int]] lits
    cdef vector[int] wild, dsts, expl_keys
    cdef vector[pair[int, int]] out
    cdef pair[int, int] edge
    cdef int i = 0, lv = 0, level_end = 1
    cdef int s, j, v, k, cid, symv
    cdef size_t e, w, m, scan, g
    cdef bint f
    cdef string key
    cdef unordered_map[string, int].iterator sit

    while i < <int>subs.size():
        if i == level_end:
            lv += 1
            level_end = <int>subs.size()
        if lv == L:
            f = False
            for e in range(subs[i].size()):
                if acc_f[subs[i][e]]:
                    f = True
                    break
            e_sym.push_back(vector[int]())
            e_dst.push_back(vector[int]())
            is_final.push_back(<char>(1 if f else 0))
            i += 1
            continue
        k = dom[lv]
        wild.clear()
        lits.clear()
        for e in range(subs[i].size()):
            s = subs[i][e]
            for j in range(off[s], off[s + 1]):
                symv = sym[j]
                if symv == C_WILDCARD:
                    wild.push_back(dst[j])
                else:
                    edge.first = symv
                    edge.second = dst[j]
                    lits.push_back(edge)
        cpp_sort(wild.begin(), wild.end())
        wild.erase(cpp_unique(wild.begin(), wild.end()), wild.end())
        cpp_sort(lits.begin(), lits.end())
        lits.erase(cpp_unique(lits.begin(), lits.end()), lits.end())

        out.clear()
        expl_keys.clear()
        g = 0
        while g < lits.size():
            v = lits[g].first
            expl_keys.push_back(v)
            dsts.clear()
            while g < lits.size() and lits[g].first == v:
                dsts.push_back(lits[g].second)
                g += 1
            for w in range(wild.size()):
                dsts.push_back(wild[w])
            cpp_sort(dsts.begin(), dsts.end())
            dsts.erase(cpp_unique(dsts.begin(), dsts.end()), dsts.end())
            key.clear()
            for m in range(dsts.size()):
                _key_int(key, dsts[m])
            sit = sub2id.find(key)
            if sit == sub2id.end():
                cid = <int>subs.size()
                sub2id[key] = cid
                subs.push_back(dsts)
            else:
                cid = deref(sit).second
            edge.first = v
            edge.second = cid
            out.push_back(edge)
        if wild.size() > 0 and <int>expl_keys.size() < k:
            key.clear()
            for m in range(wild.size()):
                _key_int(key, wild[m])
            sit = sub2id.find(key)
            if sit == sub2id.end():
                cid = <int>subs.size()
                sub2id[key] = cid
                subs.push_back(wild)
            else:
                cid = deref(sit).second
            if expl_keys.empty():
                edge.first = C_WILDCARD
                edge.second = cid
                out.push_back(edge)
            else:
                scan = 0
                for v in range(k):
                    while scan < expl_keys.size() and expl_keys[scan] < v:
                        scan += 1
                    if scan < expl_keys.size() and expl_keys[scan] == v:
                        continue
                    edge.first = v
                    edge.second = cid
                    out.push_back(edge)
        cpp_sort(out.begin(), out.end())
        e_sym.push_back(vector[int]())
        e_dst.push_back(vector[int]())
        for e in range(out.size()):
            e_sym[e_sym.size() - 1].push_back(out[e].first)
            e_dst[e_dst.size() - 1].push_back(out[e].second)
        is_final.push_back(0)
        i += 1

    cdef int raw_states = <int>subs.size()
    _minimize_struct(e_sym, e_dst, is_final, 0, dom, o_off, o_sym, o_dst, o_acc)
    return raw_states


def determinize(int n, array.array t_off, array.array t_sym, array.array t_dst,
                array.array acc, int start, domains):
    cdef vector[int] dom
    _domains_to_vec(domains, dom)
    cdef vector[char] acc_f = vector[char](n if n > 0 else 1, 0)
    cdef Py_ssize_t q
    for q in range(len(acc)):
        acc_f[acc.data.as_ints[q]] = 1
    cdef vector[int] o_off, o_sym, o_dst, o_acc
    cdef int raw = _determinize_core(
        n, t_off.data.as_ints, t_sym.data.as_ints, t_dst.data.as_ints,
        acc_f, start, dom, o_off, o_sym, o_dst, o_acc)
    return (_to_array(o_off), _to_array(o_sym), _to_array(o_dst), _to_array(o_acc), raw)


def remove_level(int n, array.array t_off, array.array t_sym, array.array t_dst,
                 array.array acc, int start, domains, int lvl):
    cdef vector[int] dom
    _domains_to_vec(domains, dom)
    cdef int L = <int>dom.size()

    cdef int* off = t_off.data.as_ints
    cdef int* sym = t_sym.data.as_ints
    cdef int* dst = t_dst.data.as_ints

    cdef vector[char] acc_f = vector[char](n, 0)
    cdef Py_ssize_t q
    for q in range(len(acc)):
        acc_f[acc.data.as_ints[q]] = 1

    cdef vector[vector[int]] edst_in = vector[vector[int]](n)
    cdef int s, j
    for s in range(n):
        for j in range(off[s], off[s + 1]):
            edst_in[s].push_back(dst[j])
    cdef vector[int] lev
    _bfs_levels(n, edst_in, start, lev)

    cdef vector[int] keep
    cdef vector[int] old2new = vector[int](n, -1)
    for s in range(n):
        if lev[s] >= 0 and lev[s] != lvl + 1:
            old2new[s] = <int>keep.size()
            keep.push_back(s)

    cdef vector[int] f_off, f_sym, f_dst
    cdef vector[char] f_final
    cdef vector[pair[int, int]] agg
    cdef pair[int, int] edge
    cdef int t, jj
    cdef size_t e
    cdef bint fin
    f_off.push_back(0)
    for e in range(keep.size()):
        s = keep[e]
        if lev[s] == lvl:
            agg.clear()
            fin = False
            for j in range(off[s], off[s + 1]):
                t = dst[j]
                if acc_f[t]:
                    fin = True
                for jj in range(off[t], off[t + 1]):
                    edge.first = sym[jj]
                    edge.second = old2new[dst[jj]]
                    agg.push_back(edge)
            cpp_sort(agg.begin(), agg.end())
            agg.erase(cpp_unique(agg.begin(), agg.end()), agg.end())
            for j in range(<int>agg.size()):
                f_sym.push_back(agg[j].first)
                f_dst.push_back(agg[j].second)
            f_final.push_back(<char>(1 if fin else 0))
        else:
            for j in range(off[s], off[s + 1]):
                f_sym.push_back(sym[j])
                f_dst.push_back(old2new[dst[j]])
            f_final.push_back(<char>(1 if acc_f[s] else 0))
        f_off.push_back(<int>f_sym.size())

    cdef int nfa_states = <int>keep.size()
    cdef vector[int] new_dom
    for j in range(L):
        if j != lvl:
            new_dom.push_back(dom[j])

    cdef vector[int] o_off, o_sym, o_dst, o_acc
    cdef int raw = _determinize_core(
        nfa_states, f_off.data(), f_sym.data(), f_dst.data(),
        f_final, old2new[start], new_dom, o_off, o_sym, o_dst, o_acc)
    return (_to_array(o_off), _to_array(o_sym), _to_array(o_dst), _to_array(o_acc),
            nfa_states, raw)
