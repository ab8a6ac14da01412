"""Regenerates corpus.txt: synthetic sitemap-style URI paths.

The first component is the host; every component is 1..15 bytes.
Usage: python3 gen_corpus.py > corpus.txt
"""
import random

SEED = 20190
COUNT = 10_000

TLDS = ["com", "org", "net", "de", "io", "edu", "info"]
SHORT = ["en", "de", "fr", "p", "c", "id", "v2", "m", "s", "i", "go", "dl"]
HOST_WORDS = [
    "shop", "news", "blog", "acme", "globex", "initech", "umbrella", "stark",
    "wayne", "hooli", "contoso", "fabrikam", "example", "tyrell", "wonka",
    "cyberdyne", "soylent", "vandelay", "pied", "gringotts",
]
SECTIONS = [
    "products", "news", "blog", "docs", "help", "about", "en", "de", "api",
    "category", "search", "user", "tags", "media", "store", "support",
    "events", "wiki", "press", "careers", "archive", "download", "static",
]
WORDS = [
    "sensor", "garden", "kitchen", "weather", "report", "update", "release",
    "guide", "install", "config", "network", "printer", "camera", "summer",
    "winter", "sale", "offer", "review", "team", "contact", "privacy",
    "terms", "faq", "pricing", "features", "overview", "tutorial", "intro",
    "chapter", "section", "gallery", "video", "audio", "photo", "index",
]
EXTS = ["html", "php", "htm", "pdf", "jpg", "png", "aspx", "json"]


def host(rng):
    word = rng.choice(HOST_WORDS)
    tld = rng.choice(TLDS)
    h = f"{word}.{tld}"
    if rng.random() < 0.8 and len(h) + 4 <= 15:
        h = "www." + h
    return h


def segment(rng):
    r = rng.random()
    if r < 0.25:
        return rng.choice(SHORT)
    if r < 0.40:
        return rng.choice(SECTIONS)
    if r < 0.55:
        return str(rng.randint(1, 10 ** rng.randint(1, 3)))
    if r < 0.62:
        return str(rng.randint(2005, 2024))
    w = rng.choice(WORDS)
    if rng.random() < 0.15:
        w2 = rng.choice(WORDS)
        if len(w) + len(w2) + 1 <= 15:
            w = f"{w}-{w2}"
    return w


def leaf(rng):
    stem = rng.choice(WORDS)
    ext = rng.choice(EXTS)
    name = f"{stem}.{ext}"
    return name if len(name) <= 15 else stem


def path(rng):
    parts = [host(rng)]
    depth = rng.choices([0, 1, 2, 3, 4, 5, 6], weights=[2, 10, 22, 26, 20, 12, 8])[0]
    parts += [segment(rng) for _ in range(depth)]
    if rng.random() < 0.35:
        parts.append(leaf(rng))
    assert all(1 <= len(p) <= 15 for p in parts)
    return "/" + "/".join(parts)


def main():
    rng = random.Random(SEED)
    print("# synthetic sitemap-style paths, regenerate with gen_corpus.py")
    for _ in range(COUNT):
        print(path(rng))


if __name__ == "__main__":
    main()
