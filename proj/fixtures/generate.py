#!/usr/bin/env python3
# Copyright 2026 The TransferBench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the offline fixture sets used by the tests.

Every sentence in a movie summary/synopsis or music description carries a
capitalized phrase or a number, so the simulated generator asks exactly one
question per sentence. Entity question counts are therefore fixed by the
number of sentences written here.

  e2e/     small run: known entities, pre-window entities, draws, baseball
  counts/  30 movies (175 QAs), 30 music videos (125), 20 matches (95, 5 draws)
"""

import json
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent

FIRST = ["Ava", "Marcus", "Ines", "Felix", "Odette", "Ravi", "Keiko", "Bruno", "Clara", "Dmitri",
         "Yara", "Hugo", "Lena", "Omar", "Priya", "Silas", "Tessa", "Viktor", "Wren", "Zane",
         "Anneke", "Basil", "Corinne", "Dario", "Esme", "Gideon", "Helga", "Ivo", "Juno", "Kasimir"]
LAST = ["Stone", "Calder", "Varga", "Okafor", "Lindqvist", "Harrow", "Sato", "Mendes", "Quill",
        "Ashby", "Drummond", "Falk", "Gallo", "Ibarra", "Jansen", "Kovac", "Morrow", "Novak",
        "Pelham", "Rourke", "Szabo", "Thorne", "Ueda", "Whitlock"]
PLACES = ["Port Ellis", "Marrowgate", "Cold Harbor", "Vell Island", "Eastbrook", "Saltmere",
          "Highcombe", "Lake Orin", "Brackwater", "Dunmore", "Greyfield", "Kestrel Bay"]
ORGS = ["Northwind Ferries", "the Halden Archive", "Copperline Radio", "the Ninth Lantern Society",
        "Meridian Works", "the Aster Choir", "Bluegate Records", "the Tidewater Guild"]
NOUNS = ["lighthouse", "orchard", "observatory", "bakery", "shipyard", "library", "greenhouse",
         "theater", "vineyard", "workshop"]

MOVIE_SENTENCES = [
    "A retired engineer named {p} returns to {pl} after {n} years away.",
    "The story follows {p} through {n} winters in a failing {noun}.",
    "Her brother works for {o} and hides a debt of {n} thousand dollars.",
    "After {n} days at sea the crew finally reaches {pl}.",
    "A letter signed by {p} reveals the location of a buried ledger.",
    "The town council of {pl} votes to close the {noun}.",
    "Rescue comes when {p} repairs the radio with parts from the {noun}.",
    "In the final act the family rebuilds the {noun} at {pl}.",
    "Old rivalries resurface when {o} buys the harbor.",
    "The film closes on a concert held {n} weeks later.",
]
MUSIC_SENTENCES = [
    "The video was filmed in {pl} over {n} days.",
    "It features a cameo by {p} as a night watchman.",
    "Choreography is credited to {p} of {o}.",
    "A vintage {noun} set was built for the final chorus in {pl}.",
    "The single sold {n} thousand copies in its first week.",
    "Dancers from {o} appear in the second verse.",
    "The closing shot was recorded at dawn above {pl}.",
]
CLUBS = ["Harbor City", "Northvale", "Redmoor", "Ostfield", "Calloway", "Brennick", "Larkspur",
         "Vantara", "Quayside", "Millbrook", "Sorrento Park", "Whitecliff"]
BALL_CLUBS = ["Ironwood Owls", "Bayview Gulls", "Cedar Falls Miners", "Portland Herons"]
STADIUMS = ["Riverside Grounds", "Harborlight Park", "Summit Field"]


class Names:
    def __init__(self, rng):
        self.rng = rng
        self.used = set()

    def person(self):
        while True:
            name = self.rng.choice(FIRST) + " " + self.rng.choice(LAST)
            if name not in self.used:
                self.used.add(name)
                return name

    def title(self, words):
        while True:
            t = " ".join(self.rng.choice(words) for _ in range(2))
            if t not in self.used:
                self.used.add(t)
                return t


TITLE_WORDS = ["Silver", "Harbor", "Quiet", "Ember", "Northern", "Glass", "Paper", "Iron", "Velvet",
               "Winter", "Lantern", "Hollow", "Scarlet", "Distant", "Salt", "Midnight", "Copper",
               "Amber", "Tidal", "Crooked", "Golden", "Sleeping"]


def fill(template, rng, names):
    return template.format(p=names.person(), pl=rng.choice(PLACES), o=rng.choice(ORGS),
                           noun=rng.choice(NOUNS), n=rng.randint(2, 40))


def sentences(pool, k, rng, names):
    picked = rng.sample(pool, k)
    return [fill(t, rng, names) for t in picked]


def iso(year, month, day):
    return f"{year:04d}-{month:02d}-{day:02d}"


def movie_item(idx, date, n_sentences, rng, names):
    body = sentences(MOVIE_SENTENCES, n_sentences, rng, names)
    cast = [names.person() for _ in range(3)]
    return {
        "entity_id": f"movie-{idx:03d}",
        "occurrence_date": date,
        "payload": {
            "title": names.title(TITLE_WORDS),
            "casts": cast,
            "summary": " ".join(body[:2]),
            "synopsis": " ".join(body[2:]),
        },
    }


def music_item(idx, date, n_sentences, rng, names):
    return {
        "entity_id": f"music-{idx:03d}",
        "occurrence_date": date,
        "payload": {
            "title": names.title(TITLE_WORDS),
            "date": date,
            "description": " ".join(sentences(MUSIC_SENTENCES, n_sentences, rng, names)),
        },
    }


def soccer_item(idx, date, n_stats, draw, rng):
    home, away = rng.sample(CLUBS, 2)
    hs = rng.randint(0, 4)
    as_ = hs if draw else rng.choice([x for x in range(0, 5) if x != hs])
    poss = rng.randint(35, 65)
    stats = [f"Possession: {poss}% - {100 - poss}%",
             f"Shots: {rng.randint(5, 20)} - {rng.randint(3, 18)}",
             f"Corners: {rng.randint(1, 11)} - {rng.randint(0, 9)}",
             f"Fouls: {rng.randint(6, 18)} - {rng.randint(5, 17)}"][:n_stats]
    return {
        "entity_id": f"match-{idx:03d}",
        "occurrence_date": date,
        "payload": {
            "sports": "Soccer",
            "league": "Coastal Premier League",
            "home_team": home,
            "away_team": away,
            "date": date,
            "home_score": hs,
            "away_score": as_,
            "stats_block": "\n".join(stats),
        },
    }


def innings(rng, runs):
    cells = [0] * 9
    for _ in range(runs):
        cells[rng.randrange(9)] += 1
    return " ".join(str(c) for c in cells)


def baseball_item(idx, date, rng):
    home, away = rng.sample(BALL_CLUBS, 2)
    hs, as_ = rng.sample(range(1, 9), 2)
    return {
        "entity_id": f"match-{idx:03d}",
        "occurrence_date": date,
        "payload": {
            "sports": "Baseball",
            "league": "Western Summer League",
            "home_team": home,
            "away_team": away,
            "date": date,
            "home_score": hs,
            "away_score": as_,
            "venue": rng.choice(STADIUMS),
            "home_innings": innings(rng, hs),
            "home_hits": hs + rng.randint(3, 7),
            "home_errors": rng.randint(0, 2),
            "away_innings": innings(rng, as_),
            "away_hits": as_ + rng.randint(2, 6),
            "away_errors": rng.randint(0, 3),
        },
    }


def spread_dates(count, start_month, rng, year=2025):
    out = []
    for i in range(count):
        month = start_month + i % 6
        out.append(iso(year, month, rng.randint(1, 28)))
    return out


def write(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=True) + "\n", encoding="utf-8")


def config(providers_dir, entities, mock, created_at):
    return {
        "target_model_id": "simulated-target",
        "knowledge_cutoff": "2024-06-01",
        "window_months": 6,
        "time_range": {"start": "2024-12-01", "end": "2025-06-30"},
        "languages": ["en", "ja", "zh", "fr", "es"],
        "domains": ["movie", "music", "sports"],
        "entities_per_domain": entities,
        "questions_per_entity": 6,
        "seed": 7,
        "created_at": created_at,
        "providers": [
            {"name": f"{d}-fixture", "domain": d, "kind": "fixture", "fixture": f"{providers_dir}/{d}.json",
             "page_size": 7}
            for d in ("movie", "music", "sports")
        ],
        "llm": {
            "generator": {"kind": "mock", "model": "simulated-generator", "mock_fixture": mock},
            "judge": {"kind": "mock", "model": "simulated-judge", "mock_fixture": mock},
            "target": {"kind": "mock", "model": "simulated-target", "mock_fixture": mock},
        },
    }


def e2e():
    rng = random.Random(7)
    names = Names(rng)
    out = ROOT / "e2e"
    known = {}

    # 12 unknown and 2 known entities in the window, 3 after the cutoff but
    # before the window, 2 before the cutoff.
    def domain_dates():
        return (spread_dates(14, 1, rng) + [iso(2024, 8, 3), iso(2024, 9, 17), iso(2024, 11, 30)]
                + [iso(2023, 10, 5), iso(2024, 5, 31)])

    movies = [movie_item(i, d, rng.choice([4, 5]), rng, names) for i, d in enumerate(domain_dates())]
    music = [music_item(i, d, rng.choice([3, 4]), rng, names) for i, d in enumerate(domain_dates())]
    sports = []
    for i, d in enumerate(domain_dates()):
        if i in (3, 9):
            sports.append(baseball_item(i, d, rng))
        else:
            sports.append(soccer_item(i, d, rng.choice([2, 3]), draw=i in (1, 6), rng=rng))

    for m in movies[12:14]:
        p = m["payload"]
        known[p["title"]] = f"{p['title']} is a film starring {', '.join(p['casts'])}."
    for m in music[12:14]:
        p = m["payload"]
        known[p["title"]] = f"{p['title']} is a music video released on {p['date']}."
    for s in sports[12:14]:
        p = s["payload"]
        display = f"{p['home_team']} vs {p['away_team']} {s['occurrence_date']}"
        known[display] = (f"The match finished {p['home_score']} - {p['away_score']} "
                          f"in the {p['league']}.")

    write(out / "providers" / "movie.json", {"items": movies})
    write(out / "providers" / "music.json", {"items": music})
    write(out / "providers" / "sports.json", {"items": sports})
    write(out / "mock_llm.json", {"known_entities": known, "translation_mode": "pseudo"})
    write(out / "config.json", config("providers", 10, "mock_llm.json", "2025-09-01T00:00:00Z"))


def counts():
    rng = random.Random(11)
    names = Names(rng)
    out = ROOT / "counts"
    # 25 movies with 5 sentences (6 QAs), 5 with 4 (5 QAs).
    movies = [movie_item(i, d, 5 if i < 25 else 4, rng, names) for i, d in enumerate(spread_dates(30, 1, rng))]
    # 25 music videos with 3 sentences (4 QAs), 5 with 4 (5 QAs).
    music = [music_item(i, d, 3 if i < 25 else 4, rng, names) for i, d in enumerate(spread_dates(30, 1, rng))]
    # 15 matches with 3 stat lines (5 QAs), 5 with 2 (4 QAs); every fourth is a draw.
    sports = [soccer_item(i, d, 3 if i < 15 else 2, draw=i % 4 == 0, rng=rng)
              for i, d in enumerate(spread_dates(20, 1, rng))]
    write(out / "providers" / "movie.json", {"items": movies})
    write(out / "providers" / "music.json", {"items": music})
    write(out / "providers" / "sports.json", {"items": sports})
    write(out / "mock_llm.json", {"known_entities": {}, "translation_mode": "pseudo"})
    write(out / "config.json", config("providers", 30, "mock_llm.json", "2025-09-01T00:00:00Z"))


if __name__ == "__main__":
    e2e()
    counts()
