"""Compiled DFS kernel for the heavy search presets.

Handles configs whose predicates are power-freeness and richness, optionally
through the tau/taubar image, plus forbidden input factors.  Semantics are
identical to the general engine (same traversal order, same node counting);
the equivalence tests in the suite compare the two on shared configs.

The kernel keeps, per image position, a trailing-match run table (one entry
per lag p: how many trailing positions match at that lag), an eertree over
the image, and reset journals so a block push rolls back exactly.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .engine import ConfigError, SearchConfig, SearchResult
from .morphisms import tau
from .predicates import ImagePredicate, NoFactorFrom, PowerFree, Rich
from .words import Word

_OK = 0
_ERR_JOURNAL = 1
_ERR_DEPTH = 2
_ERR_PREFIX = 3


@njit(cache=True)
def _kernel(nletters, letters, blocks, blocklens, prefix, alpha_num, alpha_den,
            strict, use_rich, forb, forblens, budget, max_input, max_image,
            jcap, out, witness_out):  # pragma: no cover - exercised via run()
    img = np.zeros(max_image + 1, dtype=np.int8)
    runs = np.zeros(max_image + 2, dtype=np.int64)
    jpos = np.zeros(jcap, dtype=np.int64)
    jval = np.zeros(jcap, dtype=np.int64)
    jlen = 0
    jmark = np.zeros(max_image + 2, dtype=np.int64)

    maxnodes = max_image + 4
    elen = np.zeros(maxnodes, dtype=np.int64)
    elink = np.zeros(maxnodes, dtype=np.int64)
    etrans = np.full((maxnodes, 10), -1, dtype=np.int64)
    elen[0] = -1
    elink[0] = 0
    elen[1] = 0
    elink[1] = 0
    ncount = 2
    elast = 1
    ej_last = np.zeros(max_image + 2, dtype=np.int64)
    ej_parent = np.zeros(max_image + 2, dtype=np.int64)
    ej_letter = np.zeros(max_image + 2, dtype=np.int8)

    word = np.zeros(max_input + 2, dtype=np.int8)
    imglen_at = np.zeros(max_input + 2, dtype=np.int64)
    ci = np.zeros(max_input + 2, dtype=np.int64)

    n_in = 0
    n_img = 0
    excess = alpha_num - alpha_den
    nodes = 0
    best_len = 0
    exhausted = True
    status = _OK
    nprefix = len(prefix)
    d = 0

    while True:
        nchoices = 1 if d < nprefix else nletters
        li = ci[d]
        if li >= nchoices:
            if d == 0:
                break
            d -= 1
            # pop one input letter: image letters back to imglen_at[d]
            tgt = imglen_at[d]
            while n_img > tgt:
                n_img -= 1
                cpop = img[n_img]
                for p in range(1, n_img + 1):
                    if img[n_img - p] == cpop:
                        runs[p] -= 1
                while jlen > jmark[n_img]:
                    jlen -= 1
                    runs[jpos[jlen]] = jval[jlen]
                par = ej_parent[n_img]
                if par >= 0:
                    etrans[par, ej_letter[n_img]] = -1
                    ncount -= 1
                elast = ej_last[n_img]
            n_in -= 1
            continue
        ci[d] += 1
        c = prefix[d] if d < nprefix else letters[li]
        if d >= nprefix and budget >= 0 and nodes >= budget:
            exhausted = False
            break
        nodes += 1
        ok = True
        # forbidden factors of the input word, suffix-matched
        for fi in range(len(forblens)):
            fl = forblens[fi]
            if fl <= n_in + 1 and forb[fi, fl - 1] == c:
                hit = True
                for t in range(fl - 1):
                    if forb[fi, t] != word[n_in - fl + 1 + t]:
                        hit = False
                        break
                if hit:
                    ok = False
                    break
        npushed = 0
        if ok:
            if n_in >= max_input:
                status = _ERR_DEPTH
                break
            par_in = n_in & 1
            bl = blocklens[par_in, c]
            for t in range(bl):
                b = blocks[par_in, c, t]
                # run-table update for the new image letter
                jmark[n_img] = jlen
                viol = False
                for p in range(1, n_img + 1):
                    if img[n_img - p] == b:
                        runs[p] += 1
                        r = runs[p]
                        if alpha_den * r > excess * p or (strict == 0 and alpha_den * r == excess * p):
                            viol = True
                    elif runs[p] != 0:
                        if jlen >= jcap:
                            status = _ERR_JOURNAL
                            break
                        jpos[jlen] = p
                        jval[jlen] = runs[p]
                        jlen += 1
                        runs[p] = 0
                if status != _OK:
                    break
                if viol:
                    for p in range(1, n_img + 1):
                        if img[n_img - p] == b:
                            runs[p] -= 1
                    while jlen > jmark[n_img]:
                        jlen -= 1
                        runs[jpos[jlen]] = jval[jlen]
                    ok = False
                    break
                img[n_img] = b
                n_img += 1
                # eertree push
                cur = elast
                while True:
                    pos = n_img - elen[cur] - 2
                    if pos >= 0 and img[pos] == b:
                        break
                    cur = elink[cur]
                ex = etrans[cur, b]
                if ex >= 0:
                    ej_last[n_img - 1] = elast
                    ej_parent[n_img - 1] = -1
                    created = False
                    elast = ex
                else:
                    if elen[cur] == -1:
                        lk = 1
                    else:
                        cur2 = elink[cur]
                        while True:
                            pos = n_img - elen[cur2] - 2
                            if pos >= 0 and img[pos] == b:
                                break
                            cur2 = elink[cur2]
                        lk = etrans[cur2, b]
                        if lk < 0:
                            lk = 1
                    nid = ncount
                    elen[nid] = elen[cur] + 2
                    elink[nid] = lk
                    for a in range(10):
                        etrans[nid, a] = -1
                    etrans[cur, b] = nid
                    ncount += 1
                    ej_last[n_img - 1] = elast
                    ej_parent[n_img - 1] = cur
                    ej_letter[n_img - 1] = b
                    created = True
                    elast = nid
                if use_rich == 1 and not created:
                    par = ej_parent[n_img - 1]
                    if par >= 0:
                        etrans[par, ej_letter[n_img - 1]] = -1
                        ncount -= 1
                    elast = ej_last[n_img - 1]
                    n_img -= 1
                    for p in range(1, n_img + 1):
                        if img[n_img - p] == b:
                            runs[p] -= 1
                    while jlen > jmark[n_img]:
                        jlen -= 1
                        runs[jpos[jlen]] = jval[jlen]
                    ok = False
                    break
                npushed += 1
            if status != _OK:
                break
            if not ok:
                for _ in range(npushed):
                    n_img -= 1
                    cpop = img[n_img]
                    for p in range(1, n_img + 1):
                        if img[n_img - p] == cpop:
                            runs[p] -= 1
                    while jlen > jmark[n_img]:
                        jlen -= 1
                        runs[jpos[jlen]] = jval[jlen]
                    par = ej_parent[n_img]
                    if par >= 0:
                        etrans[par, ej_letter[n_img]] = -1
                        ncount -= 1
                    elast = ej_last[n_img]
        if ok:
            word[n_in] = c
            n_in += 1
            imglen_at[n_in] = n_img
            d += 1
            ci[d] = 0
            if n_in > best_len:
                best_len = n_in
                for t in range(n_in):
                    witness_out[t] = word[t]
        elif d < nprefix:
            status = _ERR_PREFIX
            break

    out[0] = best_len
    out[1] = nodes
    out[2] = 1 if exhausted else 0
    out[3] = status


def _plain_shape(specs) -> dict | None:
    """Recognize [PowerFree] + optional Rich + optional NoFactorFrom."""
    power = [s for s in specs if isinstance(s, PowerFree)]
    rich = [s for s in specs if isinstance(s, Rich)]
    forb = [s for s in specs if isinstance(s, NoFactorFrom)]
    if len(power) != 1 or len(rich) > 1 or len(forb) > 1:
        return None
    if len(power) + len(rich) + len(forb) != len(specs):
        return None
    return {
        "alpha": power[0].alpha,
        "strict": power[0].strict,
        "rich": bool(rich),
        "forbidden": forb[0].factors if forb else (),
    }


def _shape(config: SearchConfig) -> dict | None:
    if config.alphabet_size > 9 or config.max_depth is not None:
        return None
    specs = config.predicates
    images = [s for s in specs if isinstance(s, ImagePredicate)]
    if not images:
        shape = _plain_shape(specs)
        if shape is not None:
            shape["transducer"] = None
        return shape
    if len(images) != 1 or images[0].pipeline not in (("tau",), ("taubar",)):
        return None
    rest = tuple(s for s in specs if not isinstance(s, ImagePredicate))
    forb = [s for s in rest if isinstance(s, NoFactorFrom)]
    if len(forb) != len(rest) or len(forb) > 1:
        return None
    inner = _plain_shape(images[0].inner)
    if inner is None or inner["forbidden"]:
        return None
    inner["forbidden"] = forb[0].factors if forb else ()
    inner["transducer"] = images[0].pipeline[0]
    return inner


def eligible(config: SearchConfig) -> bool:
    return _shape(config) is not None


def run(config: SearchConfig) -> SearchResult:
    shape = _shape(config)
    if shape is None:
        raise ValueError("config is not eligible for the compiled kernel")
    k = config.alphabet_size
    letters = np.array(config.letter_choices, dtype=np.int8)
    if shape["transducer"] is None:
        max_block = 1
        blocks = np.zeros((2, 10, 1), dtype=np.int8)
        blens = np.zeros((2, 10), dtype=np.int64)
        for par in range(2):
            for a in range(k):
                blocks[par, a, 0] = a
                blens[par, a] = 1
    else:
        start = 0 if shape["transducer"] == "tau" else 1
        max_block = max(tau.block_length(a) for a in range(3))
        blocks = np.zeros((2, 10, max_block), dtype=np.int8)
        blens = np.zeros((2, 10), dtype=np.int64)
        for par in range(2):
            m = tau.even_map if (par + start) % 2 == 0 else tau.odd_map
            for a in range(3):
                img = m.images[a]
                blocks[par, a, : len(img)] = img
                blens[par, a] = len(img)
    forbidden = shape["forbidden"]
    maxf = max((len(fw) for fw in forbidden), default=1)
    forb = np.zeros((max(1, len(forbidden)), maxf), dtype=np.int8)
    forblens = np.zeros(len(forbidden), dtype=np.int64)
    for i, fw in enumerate(forbidden):
        forb[i, : len(fw)] = fw
        forblens[i] = len(fw)
    prefix = np.array(config.prefix, dtype=np.int8)
    alpha = shape["alpha"]
    budget = -1 if config.node_budget is None else config.node_budget

    max_input = 4096
    jcap_factor = 256
    while True:
        max_image = max_block * (max_input + 1)
        out = np.zeros(4, dtype=np.int64)
        witness = np.zeros(max_input + 2, dtype=np.int8)
        _kernel(
            len(letters), letters, blocks, blens, prefix,
            alpha.numerator, alpha.denominator, 1 if shape["strict"] else 0,
            1 if shape["rich"] else 0, forb, forblens, budget,
            max_input, max_image, jcap_factor * (max_image + 2), out, witness,
        )
        status = int(out[3])
        if status == _ERR_PREFIX:
            raise ConfigError(f"prefix {''.join(map(str, config.prefix))} fails the predicates")
        if status == _ERR_DEPTH:
            max_input *= 4
            continue
        if status == _ERR_JOURNAL:
            jcap_factor *= 4
            continue
        length = int(out[0])
        wit = Word(tuple(int(x) for x in witness[:length]), k)
        return SearchResult(length, wit, bool(out[2]), int(out[1]))
