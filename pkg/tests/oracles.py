"""Independent brute-force oracles shared by the test modules."""

import itertools
import random

from morphrec.core import Alphabet
from morphrec.languages import full_language_contains
from morphrec.morphisms import Morphism


def brute_fragments(target, sigma, oracle=None, erased_bound=8):
    """All (window, k) parses of ``target`` by enumerating every subset of cut
    positions, every letter assignment of the pieces and every erased filler."""
    images = sigma.images
    n = len(target)
    erased = [a for a, im in enumerate(images) if not im]

    def ok(z):
        return oracle is None or full_language_contains(oracle, z)

    fillers = [()]
    for r in range(1, erased_bound + 1):
        fillers += list(itertools.product(erased, repeat=r))

    out = set()
    for mask in range(1 << (n - 1)):
        cuts = [0] + [i for i in range(1, n) if mask >> (i - 1) & 1] + [n]
        pieces = [tuple(target[cuts[i]:cuts[i + 1]]) for i in range(len(cuts) - 1)]
        # (letter, k) choices per piece
        choices = []
        for idx, piece in enumerate(pieces):
            first, last = idx == 0, idx == len(pieces) - 1
            opts = []
            for a, im in enumerate(images):
                if not im:
                    continue
                ks = range(len(im)) if first else [0]
                for k in ks:
                    seg = im[k:k + len(piece)]
                    if seg != piece:
                        continue
                    if not last and k + len(piece) != len(im):
                        continue
                    opts.append((a, k))
            if not opts:
                break
            choices.append(opts)
        else:
            for assign in itertools.product(*choices):
                letters = [a for a, _ in assign]
                k = assign[0][1]
                gaps = []
                for i in range(len(letters) - 1):
                    gaps.append([f for f in fillers
                                 if ok((letters[i],) + f + (letters[i + 1],))])
                for fill in itertools.product(*gaps):
                    z = (letters[0],)
                    for f, a in zip(fill, letters[1:]):
                        z += f + (a,)
                    if ok(z):
                        out.add((z, k))
    return sorted(out, key=lambda t: (t[1], t[0]))


def random_morphism(rng: random.Random, max_letters=3, max_image=4, erasing=True,
                    endomorphism=True, min_letters=1):
    d = rng.randint(min_letters, max_letters)
    dom = Alphabet(tuple("abcdef"[:d]))
    cod = dom if endomorphism else Alphabet(tuple("abcdef"[:rng.randint(1, max_letters)]))
    lo = 0 if erasing else 1
    images = tuple(tuple(rng.randrange(len(cod)) for _ in range(rng.randint(lo, max_image)))
                   for _ in range(d))
    return Morphism(dom, cod, images)


def brute_decomposable(sigma):
    """Some set of at most Card(A) - 1 non-empty words generating every image,
    found by trying all candidate sets of factors of the images."""
    d = len(sigma.domain)
    if d == 0:
        return False
    if any(not im for im in sigma.images):
        return True
    factors = set()
    for im in sigma.images:
        for i in range(len(im)):
            for j in range(i + 1, len(im) + 1):
                factors.add(im[i:j])
    factors = sorted(factors, key=lambda w: (len(w), w))
    for size in range(0, d):
        for pieces in itertools.combinations(factors, size):
            if all(_splits(im, pieces) for im in sigma.images):
                return True
    return False


def _splits(word, pieces):
    reach = [False] * (len(word) + 1)
    reach[0] = True
    for i in range(len(word)):
        if reach[i]:
            for p in pieces:
                if word[i:i + len(p)] == p:
                    reach[i + len(p)] = True
    return reach[-1]
