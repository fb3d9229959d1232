"""Instrumented algorithm kernels that tally elementary operations exactly.

Each kernel mutates a 6-slot ``int64`` count array laid out as
``(comparison, assignment, arithmetic, array_access, call, other)``: the
same order as :data:`costlab.cost_model.OP_KINDS`.

Charging policy (uniform across kernels):

==============  ================================================================
comparison      element-vs-element or element-vs-key comparisons only
assignment      element writes, including the 3-assignment temp dance of a swap
arithmetic      index updates, bound computations, and data arithmetic (modulo)
array_access    element reads from array storage
call            one per (sub)problem invocation: recursive call, sift-down, ...
other           loop guards on indices (``j >= 1``, ``lo <= hi``, size checks)
==============  ================================================================

Loop-control index comparisons are charged as ``other`` rather than
``comparison`` so that the comparison tally matches the usual
comparison-counting convention for sorting and searching.

The ``min`` kernel updates its running minimum branchlessly (the update is
charged on every iteration), so its tally is a pure function of ``n``,
identical for every input permutation.

Kernels are numba-jitted unless ``COSTLAB_DISABLE_NUMBA=1``; the pure-Python
path runs the very same bodies and produces bit-identical tallies.
"""

from __future__ import annotations

import numpy as np

from ._dispatch import njit

# Count-array slots, fixed order shared with cost_model.OP_KINDS.
CMP = 0
ASG = 1
ARI = 2
ACC = 3
CALL = 4
OTH = 5
N_KINDS = 6


def new_counts() -> np.ndarray:
    """Fresh all-zero count array in the kernel layout."""
    return np.zeros(N_KINDS, dtype=np.int64)


@njit(cache=True)
def min_kernel(T, counts):
    """Smallest element of T by linear scan; cost depends only on len(T)."""
    n = T.shape[0]
    counts[ACC] += 1
    counts[ASG] += 1
    a = T[0]
    for j in range(1, n):
        counts[ARI] += 1
        counts[ACC] += 1
        v = T[j]
        counts[CMP] += 1
        smaller = v < a
        counts[ASG] += 1  # branchless conditional move
        if smaller:
            a = v
    return a


@njit(cache=True)
def insert_kernel(T, x, counts):
    """Insert x into the sorted prefix T[0:n-1]; T has one spare slot at the end."""
    n = T.shape[0] - 1
    counts[ASG] += 1  # place x in the spare slot
    T[n] = x
    counts[ARI] += 1  # cursor init
    j = n - 1
    while True:
        counts[OTH] += 1  # index guard
        if j < 0:
            break
        counts[ACC] += 2
        left = T[j]
        right = T[j + 1]
        counts[CMP] += 1
        if left <= right:
            break
        counts[ASG] += 3  # temp <- T[j]; T[j] <- T[j+1]; T[j+1] <- temp
        T[j] = right
        T[j + 1] = left
        counts[ARI] += 1
        j -= 1


@njit(cache=True)
def insertion_sort_kernel(T, counts):
    n = T.shape[0]
    for i in range(1, n):
        counts[ARI] += 1
        counts[ACC] += 1
        counts[ASG] += 1
        key = T[i]
        counts[ARI] += 1
        j = i - 1
        while True:
            counts[OTH] += 1  # index guard
            if j < 0:
                break
            counts[ACC] += 1
            v = T[j]
            counts[CMP] += 1
            if v <= key:
                break
            counts[ASG] += 1  # shift
            T[j + 1] = v
            counts[ARI] += 1
            j -= 1
        counts[ASG] += 1  # final placement
        T[j + 1] = key


@njit(cache=True)
def binary_search_kernel(T, key, counts):
    """Index of key in sorted T, or -1."""
    counts[ARI] += 2
    lo = 0
    hi = T.shape[0] - 1
    while True:
        counts[OTH] += 1  # window guard
        if lo > hi:
            return -1
        counts[ARI] += 2
        mid = (lo + hi) // 2
        counts[ACC] += 1
        counts[ASG] += 1
        v = T[mid]
        counts[CMP] += 1
        if v == key:
            return mid
        counts[CMP] += 1
        if v < key:
            counts[ARI] += 1
            lo = mid + 1
        else:
            counts[ARI] += 1
            hi = mid - 1


@njit(cache=True)
def euclid_kernel(a, b, counts):
    """gcd by repeated remainder; callers pass a >= b >= 1."""
    x = a
    y = b
    while True:
        counts[CMP] += 1  # y != 0 (data comparison)
        if y == 0:
            break
        counts[ARI] += 1  # the modulo
        r = x % y
        counts[ASG] += 2
        x = y
        y = r
    return x


@njit(cache=True)
def merge_sort_kernel(T, counts):
    """Top-down merge sort via an explicit stack; left half gets floor(m/2)."""
    n = T.shape[0]
    aux = np.empty(n, dtype=np.int64)
    stack = np.empty((512, 3), dtype=np.int64)
    stack[0, 0] = 0
    stack[0, 1] = n - 1
    stack[0, 2] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        lo = stack[sp, 0]
        hi = stack[sp, 1]
        phase = stack[sp, 2]
        if phase == 0:
            counts[CALL] += 1  # call on this window
            counts[OTH] += 1  # base-case check
            if lo >= hi:
                continue
            counts[ARI] += 2  # half, mid
            mid = lo + (hi - lo + 1) // 2 - 1
            stack[sp, 0] = lo
            stack[sp, 1] = hi
            stack[sp, 2] = 1
            sp += 1
            stack[sp, 0] = mid + 1
            stack[sp, 1] = hi
            stack[sp, 2] = 0
            sp += 1
            stack[sp, 0] = lo
            stack[sp, 1] = mid
            stack[sp, 2] = 0
            sp += 1
        else:
            mid = lo + (hi - lo + 1) // 2 - 1
            for t in range(lo, hi + 1):
                counts[ARI] += 1
                counts[ACC] += 1
                counts[ASG] += 1
                aux[t] = T[t]
            counts[ARI] += 3
            i = lo
            j = mid + 1
            k = lo
            while True:
                counts[OTH] += 1  # both-runs guard
                if i > mid or j > hi:
                    break
                counts[ACC] += 2
                av = aux[i]
                bv = aux[j]
                counts[CMP] += 1
                if av <= bv:
                    counts[ASG] += 1
                    T[k] = av
                    counts[ARI] += 1
                    i += 1
                else:
                    counts[ASG] += 1
                    T[k] = bv
                    counts[ARI] += 1
                    j += 1
                counts[ARI] += 1
                k += 1
            while True:
                counts[OTH] += 1  # left drain guard
                if i > mid:
                    break
                counts[ACC] += 1
                counts[ASG] += 1
                T[k] = aux[i]
                counts[ARI] += 2
                i += 1
                k += 1
            while True:
                counts[OTH] += 1  # right drain guard
                if j > hi:
                    break
                counts[ACC] += 1
                counts[ASG] += 1
                T[k] = aux[j]
                counts[ARI] += 2
                j += 1
                k += 1


@njit(cache=True)
def quicksort_kernel(T, counts):
    """First-element-pivot quicksort with a stable two-buffer partition."""
    n = T.shape[0]
    auxs = np.empty(n, dtype=np.int64)
    auxl = np.empty(n, dtype=np.int64)
    stack = np.empty((2 * n + 4, 2), dtype=np.int64)
    stack[0, 0] = 0
    stack[0, 1] = n - 1
    sp = 1
    while sp > 0:
        sp -= 1
        lo = stack[sp, 0]
        hi = stack[sp, 1]
        counts[CALL] += 1  # call on this window
        counts[OTH] += 1  # base-case check
        if lo >= hi:
            continue
        counts[ACC] += 1
        counts[ASG] += 1
        pivot = T[lo]
        counts[ARI] += 2
        ns = 0
        nl = 0
        for t in range(lo + 1, hi + 1):
            counts[ARI] += 1
            counts[ACC] += 1
            v = T[t]
            counts[CMP] += 1
            if v < pivot:
                counts[ASG] += 1
                auxs[ns] = v
                counts[ARI] += 1
                ns += 1
            else:
                counts[CMP] += 1  # confirm v > pivot (keys are distinct)
                counts[ASG] += 1
                auxl[nl] = v
                counts[ARI] += 1
                nl += 1
        for t in range(ns):
            counts[ARI] += 1
            counts[ACC] += 1
            counts[ASG] += 1
            T[lo + t] = auxs[t]
        counts[ASG] += 1
        T[lo + ns] = pivot
        for t in range(nl):
            counts[ARI] += 1
            counts[ACC] += 1
            counts[ASG] += 1
            T[lo + ns + 1 + t] = auxl[t]
        counts[ARI] += 2  # child bounds
        stack[sp, 0] = lo + ns + 1
        stack[sp, 1] = hi
        sp += 1
        stack[sp, 0] = lo
        stack[sp, 1] = lo + ns - 1
        sp += 1


@njit(cache=True)
def _sift_down(T, heap_n, i, counts):
    counts[ARI] += 1  # cursor init
    j = i
    while True:
        counts[ARI] += 2  # left child index
        left = 2 * j + 1
        counts[OTH] += 1  # child-exists check
        if left >= heap_n:
            break
        big = left
        counts[ARI] += 1  # right child index
        right = left + 1
        counts[OTH] += 1  # right-exists check
        if right < heap_n:
            counts[ACC] += 2
            counts[CMP] += 1
            if T[right] > T[left]:
                big = right
        counts[ACC] += 2
        counts[CMP] += 1
        if T[big] > T[j]:
            counts[ASG] += 3  # swap
            tmp = T[j]
            T[j] = T[big]
            T[big] = tmp
            counts[ARI] += 1
            j = big
        else:
            break


@njit(cache=True)
def floyd_heapify_kernel(T, counts):
    """Bottom-up max-heap construction (sift-down from the last internal node)."""
    n = T.shape[0]
    counts[ARI] += 1  # start index
    for i in range(n // 2 - 1, -1, -1):
        counts[ARI] += 1
        counts[CALL] += 1
        _sift_down(T, n, i, counts)


@njit(cache=True)
def heapsort_kernel(T, counts):
    """Heapsort: bottom-up build, then repeated root extraction."""
    n = T.shape[0]
    counts[ARI] += 1  # start index
    for i in range(n // 2 - 1, -1, -1):
        counts[ARI] += 1
        counts[CALL] += 1
        _sift_down(T, n, i, counts)
    for end in range(n - 1, 0, -1):
        counts[ARI] += 1
        counts[ACC] += 2
        counts[ASG] += 3  # swap root with the last heap slot
        tmp = T[0]
        T[0] = T[end]
        T[end] = tmp
        counts[CALL] += 1
        _sift_down(T, end, 0, counts)


@njit(cache=True)
def _insertion_sort_window(T, lo, hi, counts):
    i = lo + 1
    while i <= hi:
        counts[ARI] += 1
        counts[ACC] += 1
        counts[ASG] += 1
        key = T[i]
        counts[ARI] += 1
        j = i - 1
        while True:
            counts[OTH] += 1  # index guard
            if j < lo:
                break
            counts[ACC] += 1
            v = T[j]
            counts[CMP] += 1
            if v <= key:
                break
            counts[ASG] += 1
            T[j + 1] = v
            counts[ARI] += 1
            j -= 1
        counts[ASG] += 1
        T[j + 1] = key
        i += 1


@njit(cache=True)
def select_mom_kernel(T, k0, counts):
    """k0-th smallest (0-based) via median-of-medians pivoting; runs in O(n).

    The medians recursion is driven by an explicit frame stack: stage 0
    collects group medians and spawns the select on them, stage 1 receives
    the pivot and partitions.  Side descents reuse the current frame.
    """
    n = T.shape[0]
    auxs = np.empty(n, dtype=np.int64)
    auxl = np.empty(n, dtype=np.int64)
    frames = np.empty((64, 4), dtype=np.int64)  # (lo, hi, k, stage)
    counts[CALL] += 1
    frames[0, 0] = 0
    frames[0, 1] = n - 1
    frames[0, 2] = k0
    frames[0, 3] = 0
    fp = 1
    retval = np.int64(0)
    while fp > 0:
        lo = frames[fp - 1, 0]
        hi = frames[fp - 1, 1]
        k = frames[fp - 1, 2]
        stage = frames[fp - 1, 3]
        if stage == 0:
            counts[ARI] += 1
            m = hi - lo + 1
            counts[OTH] += 1  # base-case check
            if m <= 5:
                _insertion_sort_window(T, lo, hi, counts)
                counts[ACC] += 1
                retval = T[k]
                fp -= 1
                continue
            # move group-of-5 medians to the window front
            counts[ARI] += 2
            ng = 0
            g = lo
            while True:
                counts[OTH] += 1  # groups-remaining check
                if g > hi:
                    break
                counts[ARI] += 1
                gend = g + 4
                if gend > hi:
                    gend = hi
                _insertion_sort_window(T, g, gend, counts)
                counts[ARI] += 1
                mi = g + (gend - g) // 2
                counts[ACC] += 2
                counts[ASG] += 3  # swap the group median into the prefix
                tmp = T[lo + ng]
                T[lo + ng] = T[mi]
                T[mi] = tmp
                counts[ARI] += 2
                ng += 1
                g += 5
            counts[CALL] += 1  # select the median of the medians prefix
            frames[fp - 1, 3] = 1
            frames[fp, 0] = lo
            frames[fp, 1] = lo + ng - 1
            frames[fp, 2] = lo + (ng - 1) // 2
            frames[fp, 3] = 0
            fp += 1
            continue
        # stage 1: retval carries the pivot from the medians select
        pv = retval
        counts[ARI] += 2
        ns = 0
        nl = 0
        for t in range(lo, hi + 1):
            counts[ARI] += 1
            counts[ACC] += 1
            v = T[t]
            counts[CMP] += 1
            if v < pv:
                counts[ASG] += 1
                auxs[ns] = v
                counts[ARI] += 1
                ns += 1
            else:
                counts[CMP] += 1
                if v > pv:
                    counts[ASG] += 1
                    auxl[nl] = v
                    counts[ARI] += 1
                    nl += 1
        for t in range(ns):
            counts[ARI] += 1
            counts[ACC] += 1
            counts[ASG] += 1
            T[lo + t] = auxs[t]
        counts[ASG] += 1
        T[lo + ns] = pv
        for t in range(nl):
            counts[ARI] += 1
            counts[ACC] += 1
            counts[ASG] += 1
            T[lo + ns + 1 + t] = auxl[t]
        counts[ARI] += 1
        idx = lo + ns
        counts[OTH] += 1  # three-way index test
        if idx == k:
            counts[ACC] += 1
            retval = T[idx]
            fp -= 1
            continue
        if idx > k:
            counts[ARI] += 1
            frames[fp - 1, 1] = idx - 1
        else:
            counts[ARI] += 1
            frames[fp - 1, 0] = idx + 1
        frames[fp - 1, 3] = 0
        counts[CALL] += 1  # descend into the surviving side
    return retval
