#!/usr/bin/env python3
"""Regenerates the committed CSV fixtures under tests/fixtures/."""
import csv
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

FILLER = ["barang", "produk", "toko", "pengiriman", "seller", "kurir", "paket", "harga",
          "kualitas", "warna", "ukuran", "bahan", "pesanan", "sampai", "hari"]
KEYWORDS = {
    "positif": ["bagus", "mantap", "puas", "cepat", "rapi", "original", "recommended", "keren", "awet", "murah"],
    "netral": ["lumayan", "standar", "biasa", "cukup", "sesuai", "rata", "oke", "normal", "sedang", "wajar"],
    "negatif": ["rusak", "kecewa", "jelek", "lambat", "palsu", "retak", "bocor", "cacat", "buruk", "parah"],
}
DECOR = ["", "!!!", " 👍", " https://tokopedia.link/abc", "...", " :)", " www.toko.id/p?x=1", " 😡", "??"]


def decorate(rng, words):
    text = " ".join(words)
    if rng.random() < 0.3:
        text = text.upper() if rng.random() < 0.3 else text.capitalize()
    return text + rng.choice(DECOR)


def write(name, rows):
    with open(OUT / name, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["review_text", "label", "rating"])
        for text, label in rows:
            w.writerow([text, label, rng_rating(label)])


def rng_rating(label):
    return {"positif": 5, "netral": 3, "negatif": 1}[label]


def separable(rng, per_class=100):
    rows = []
    for label, keys in KEYWORDS.items():
        for _ in range(per_class):
            words = rng.sample(keys, rng.randint(3, 5)) + rng.sample(FILLER, rng.randint(2, 4))
            rng.shuffle(words)
            rows.append((decorate(rng, words), label))
    rng.shuffle(rows)
    return rows


def imbalanced(rng, counts=(("positif", 950), ("netral", 40), ("negatif", 10))):
    rows = []
    labels = [l for l, _ in counts]
    for label, n in counts:
        for _ in range(n):
            words = rng.sample(FILLER, rng.randint(4, 7))
            for _ in range(rng.randint(2, 3)):
                source = label if rng.random() < 0.85 else rng.choice([l for l in labels if l != label])
                words.append(rng.choice(KEYWORDS[source][:6]))
            rng.shuffle(words)
            rows.append((decorate(rng, words), label))
    rng.shuffle(rows)
    return rows


def small(rng):
    rows = []
    for label, n in (("positif", 10), ("netral", 6), ("negatif", 4)):
        for _ in range(n):
            words = rng.sample(KEYWORDS[label], 2) + rng.sample(FILLER, 2)
            rows.append((decorate(rng, words), label))
    rng.shuffle(rows)
    return rows


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    write("separable_300.csv", separable(random.Random(42)))
    write("imbalanced_1000.csv", imbalanced(random.Random(42)))
    write("small_20.csv", small(random.Random(7)))
