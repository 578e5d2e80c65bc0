#!/usr/bin/env python3
"""Regenerates the synthetic league fixtures in this directory.

The JSON files are committed and treated as frozen; tests pin values computed
from them. Re-running this script with the same seeds reproduces them
byte-for-byte.
"""

import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

MEANS = {"QB": (18.0, 4.0), "RB": (10.0, 4.5), "WR": (10.0, 4.5),
         "TE": (7.0, 3.0), "K": (8.0, 1.5), "DST": (7.0, 2.5)}

# The user's roster in the 12-team fixture: names and positions as listed
# for the author's team (projections are synthetic).
USER_ROSTER = [
    ("Amon-Ra St. Brown", "WR"), ("Brock Bowers", "TE"), ("Davante Adams", "WR"),
    ("Tony Pollard", "RB"), ("Travis Hunter", "WR"), ("Justin Herbert", "QB"),
    ("Cam Skattebo", "RB"), ("Cameron Dicker", "K"), ("Hunter Henry", "TE"),
    ("Kenneth Gainwell", "RB"), ("Chris Olave", "WR"), ("RJ Harvey", "RB"),
    ("Kimani Vidal", "RB"), ("Oronde Gadsden II", "TE"), ("Chargers D/ST", "DST"),
    ("Jaylin Noel", "WR"), ("Matthew Wright", "K"),
]

OPPONENT_TEMPLATE = ["QB", "QB", "RB", "RB", "RB", "RB", "RB", "WR", "WR", "WR",
                     "WR", "WR", "TE", "TE", "K", "DST"]


def projections(rng, position, first, last, scale=1.0):
    mean, spread = MEANS[position]
    base = max(0.5, rng.gauss(mean, spread) * scale)
    bye = rng.randint(first, min(last, 14))
    weekly = {}
    for w in range(first, last + 1):
        if w == bye:
            weekly[str(w)] = 0.0
        else:
            weekly[str(w)] = round(max(0.0, rng.gauss(base, spread * 0.35)), 1)
    return weekly


def player(rng, pid, name, position, first, last, scale=1.0):
    return {"player_id": pid, "name": name, "position": position,
            "weekly_points": projections(rng, position, first, last, scale)}


def twelve_team():
    rng = random.Random(20251015)
    first, last = 8, 17
    teams = []
    user_players = [player(rng, f"u{i:02d}", name, pos, first, last)
                    for i, (name, pos) in enumerate(USER_ROSTER)]
    teams.append({"team_id": "T01", "team_name": "Author's Team", "players": user_players})
    for t in range(2, 13):
        plist = []
        for i, pos in enumerate(OPPONENT_TEMPLATE):
            pid = f"t{t:02d}p{i:02d}"
            plist.append(player(rng, pid, f"Team {t} {pos} {i}", pos, first, last))
        teams.append({"team_id": f"T{t:02d}", "team_name": f"Opponent {t}", "players": plist})
    free_agents = []
    for i in range(60):
        pos = rng.choice(list(MEANS))
        free_agents.append(player(rng, f"fa{i:02d}", f"Free Agent {i}", pos, first, last, 0.55))
    return {"version": 1,
            "league": {"user_team_id": "T01", "current_week": first, "final_week": last,
                       "playoff_weeks": [15, 16, 17], "teams": teams},
            "free_agents": free_agents}


def small_league():
    rng = random.Random(4242)
    first, last = 8, 17
    # Complementary surpluses (RB / WR / QB+TE) so that mutually beneficial
    # trades exist at several sizes.
    layouts = [
        ["QB", "RB", "RB", "RB", "RB", "WR", "TE", "K"],
        ["QB", "RB", "WR", "WR", "WR", "WR", "TE", "DST"],
        ["QB", "QB", "RB", "RB", "WR", "WR", "TE", "TE"],
    ]
    teams = []
    for t, layout in enumerate(layouts, start=1):
        plist = [player(rng, f"s{t}p{i}", f"Small {t}-{i} {pos}", pos, first, last)
                 for i, pos in enumerate(layout)]
        teams.append({"team_id": f"S{t}", "team_name": f"Small Team {t}", "players": plist})
    ceilings = {}
    for pos, (mean, _) in MEANS.items():
        ceilings[pos] = {str(w): round(mean * 0.3, 1) for w in range(first, last + 1)}
    return {"version": 1,
            "league": {"user_team_id": "S1", "current_week": first, "final_week": last,
                       "playoff_weeks": [15, 16, 17], "teams": teams},
            "ceilings": ceilings}


def main():
    for name, doc in [("league12.json", twelve_team()), ("small_league.json", small_league())]:
        (HERE / name).write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
