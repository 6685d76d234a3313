"""Built-in example posets."""

from .poset import chain, fence, from_hasse, opposite


def circle_model():
    """Four points a, b below c, d: the minimal finite model of the circle."""
    return from_hasse("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def two_over_five():
    """y1, y2 each above all of x1..x5."""
    xs = [f"x{i}" for i in range(1, 6)]
    ys = ["y1", "y2"]
    return from_hasse(xs + ys, [(x, y) for y in ys for x in xs])


def builtin_corpus():
    """Name -> poset for every built-in example, in a fixed order."""
    out = {
        "circle": circle_model(),
        "two-over-five": two_over_five(),
        "two-over-five-op": opposite(two_over_five()),
    }
    for m in range(1, 5):
        out[f"fence{m}"] = fence(m)
    for k in range(1, 5):
        out[f"chain{k}"] = chain(k)
    return out


def random_poset(n, rng, p=0.4, prefix="v"):
    """Random poset on ``n`` points: random upward edges, transitively closed."""
    labels = [f"{prefix}{i}" for i in range(n)]
    covers = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)
              if rng.random() < p]
    return from_hasse(labels, covers)


def random_connected_poset(max_n, rng, p=0.4, min_n=1):
    from .homotopy import is_path_connected

    while True:
        P = random_poset(rng.randint(min_n, max_n), rng, p)
        if is_path_connected(P):
            return P
