#!/usr/bin/env python3
"""Writes questionnaires_908.csv: one row per (questionnaire, website) answer.

Per-country questionnaire and distinct-site counts and the three most
mentioned sites per country (with their counts) are fixed; every other site
is synthetic and mentioned fewer times than the country's third site.
"""

import csv
import random
import sys

COUNTRIES = {
    # name: (questionnaires, distinct sites, top three as (website, mentions, primary))
    "India": (122, 67, [("www.worldometers.info/coronavirus", 11, False),
                        ("www.mohfw.gov.in", 10, True),
                        ("www.mygov.in/covid-19/?cbps=1", 10, True)]),
    "United States": (106, 77, [("www.cdc.gov/coronavirus/2019-ncov", 14, True),
                                ("www.usa.gov/coronavirus", 6, True),
                                ("www.nytimes.com/news-event/coronavirus", 4, False)]),
    "Italy": (104, 68, [("www.salute.gov.it/nuovocoronavirus", 11, True),
                        ("www.salute.gov.it/portale/home.html", 4, True),
                        ("www.worldometers.info/coronavirus", 3, False)]),
    "Japan": (102, 49, [("hazard.yahoo.co.jp/article/20200207", 17, False),
                        ("www.mhlw.go.jp/stf/seisakunitsuite/bunya/0000164708_00001.html", 13, True),
                        ("corona.feedal.com", 6, False)]),
    "Spain": (126, 90, [("www.usa.gov/coronavirus", 9, True),
                        ("www.mscbs.gob.es/profesionales/saludPublica/ccayes/alertasActual/nCov-China/home.htm", 7, True),
                        ("covid19.gob.es", 4, True)]),
    "France": (127, 71, [("www.gouvernement.fr/info-coronavirus", 28, True),
                         ("www.who.int/fr/emergencies/diseases/novel-coronavirus-2019", 7, True),
                         ("www.lemonde.fr/coronavirus-2019-ncov/", 6, False)]),
    "Germany": (106, 61, [("www.rki.de/DE/Home/homepage_node.html", 7, True),
                          ("www.bundesgesundheitsministerium.de/coronavirus.html", 6, True),
                          ("interaktiv.morgenpost.de/corona-virus-karte-infektionen-deutschland-weltweit", 5, False)]),
    "Brazil": (115, 67, [("covid.saude.gov.br", 21, True),
                         ("g1.globo.com/bemestar/coronavirus", 11, False),
                         ("coronavirus.saude.gov.br", 9, True)]),
}

TLD = {"India": "in", "United States": "com", "Italy": "it", "Japan": "jp",
       "Spain": "es", "France": "fr", "Germany": "de", "Brazil": "com.br"}

PHRASES = ["infection status", "prevention and emergency declaration",
           "symptoms, medical treatment and tests", "economics and welfare",
           "school and online classes", "entertainment and sports", "about rumours", "others"]

REASONS_PRIMARY = ["This site is the government web site.", "Official health ministry updates.",
                   "They publish the official statistics."]
REASONS_SECONDARY = ["A major newspaper with a good track record.", "They cite official sources.",
                     "Updated every day and easy to read."]


def spread(total, slots, cap, rng):
    """`slots` counts, each in [1, cap], summing to `total`."""
    counts = [1] * slots
    left = total - slots
    assert 0 <= left <= slots * (cap - 1), (total, slots, cap)
    while left:
        i = rng.randrange(slots)
        if counts[i] < cap:
            counts[i] += 1
            left -= 1
    return counts


def rows_for(country, rng):
    n_rows, n_sites, top = COUNTRIES[country]
    cap = top[-1][1] - 1
    fillers = n_sites - len(top)
    rest = n_rows - sum(m for _, m, _ in top)
    sites = list(top)
    for i, m in enumerate(spread(rest, fillers, cap, rng)):
        primary = rng.random() < 0.4
        host = f"{'covid.gov' if primary else 'news'}{i:02d}.example.{TLD[country]}"
        sites.append((f"https://{host}/coronavirus", m, primary))
    rows = []
    for site, mentions, primary in sites:
        for _ in range(mentions):
            reasons = REASONS_PRIMARY if primary else REASONS_SECONDARY
            topics = rng.sample(PHRASES, rng.randint(1, 3))
            rows.append([site, country, "true" if primary else "false", rng.choice(reasons), ";".join(topics)])
    rng.shuffle(rows)
    return rows


def main(path):
    rng = random.Random(20200501)
    out = []
    for country in COUNTRIES:
        out.extend(rows_for(country, rng))
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["website", "country", "primary", "reason", "topics", "worker_id"])
        for i, row in enumerate(out):
            w.writerow(row + [f"w{i:04d}"])
    print(f"{len(out)} rows -> {path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "questionnaires_908.csv")
