"""Regenerates the end-to-end pipeline fixture.

Writes messages.jsonl (200 synthetic heatwave and flood posts, 24-26 June
2020) and synop.txt (hourly raw FM-12 reports from two stations over the same
days, with a few missing groups). The files are committed; rerunning this
script reproduces them byte for byte.
"""
import datetime
import json
import math
import pathlib
import random

here = pathlib.Path(__file__).resolve().parent
rng = random.Random(20200625)

heat = [
    "Heatwave warning issued, temperatures could reach 33C in London today",
    "So hot on the tube, absolutely unbearable heat this afternoon",
    "Stay hydrated and check on elderly neighbours during the heatwave",
    "Beach is packed, lovely sunny weather but the heat is brutal",
    "Met Office amber heat health alert for the south east",
    "Hospital admissions for heatstroke rising as the heatwave continues",
    "Loving this wonderful sunshine, great day in the park",
    "Cannot sleep, bedroom is too hot, awful night",
    "Record temperatures forecast for Thursday, the hottest June day in years",
    "Volunteers handing out free water to people in the heat",
    "Wildfire risk is high on the moors after weeks of dry hot weather",
    "Please donate water and fans for the homeless shelter during the heatwave",
    "Ambulance service under pressure with heat related illness calls",
    "Great relief when the evening breeze finally arrived, thanks",
    "Drought warning for farmers as the heat dries out the fields",
]
flood = [
    "Flood warning on the river after heavy rain overnight",
    "Sandbags ready, preparing for flash flooding in the village",
    "River burst its banks, roads closed, emergency services on scene",
    "Rescue teams evacuated families from flooded homes",
    "Storm brings heavy rainfall and flood alerts across the north",
]
chatter = [
    "Anyone know a good place for lunch near the station",
    "What a match last night, brilliant performance",
    "Train delayed again, running late for work",
    "New coffee shop opened on the high street, lovely staff",
    "Reading a great book in the garden",
]
authors = ["MetOffice", "EnvAgency", "BBCWeather", "NHSEngland"] + [f"user{i:03d}" for i in range(60)]

messages = []
start = 1592956800  # 2020-06-24T00:00:00Z
span = 3 * 24 * 3600
for i in range(200):
    # More posts in the afternoon, when it is hottest.
    day = rng.randrange(3)
    hour = min(23, max(0, int(rng.gauss(14, 5))))
    t = start + day * 86400 + hour * 3600 + rng.randrange(3600)
    pool = rng.choices([heat, flood, chatter], weights=[6, 2, 2])[0]
    text = rng.choice(pool)
    if rng.random() < 0.3:
        text += " " + rng.choice(["#heatwave", "#ukweather", "#floods", ":)", ":(", "http://t.co/abc123"])
    author = rng.choice(authors[:4]) if rng.random() < 0.1 else rng.choice(authors[4:])
    stamp = datetime.datetime.fromtimestamp(t, datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    messages.append({"id": str(1275000000000000000 + i), "created_at": stamp,
                     "user": {"screen_name": author}, "text": text, "retweeted": rng.random() < 0.1})
messages.sort(key=lambda m: (m["created_at"], m["id"]))
with open(here / "messages.jsonl", "w") as f:
    for m in messages:
        f.write(json.dumps(m, ensure_ascii=False) + "\n")


def tenths(v):
    n = int(round(v * 10))
    return f"{0 if n >= 0 else 1}{abs(n):03d}"


lines = []
for day in (24, 25, 26):
    for hour in range(24):
        lines.append(f"AAXX {day:02d}{hour:02d}4")
        # Hours where neither station reports temperature; the aligned frame
        # must drop them.
        both_missing = rng.random() < 0.05
        for station, offset in (("03772", 0.0), ("03781", -0.8)):
            t = 24.0 + offset + 8.0 * math.sin((hour - 9) / 24 * 2 * math.pi) + (day - 24) * 1.2
            td = 12.0 + rng.uniform(-1.5, 1.5)
            p = 1014.0 - (day - 24) * 1.5 + rng.uniform(-0.6, 0.6)
            wind = rng.randrange(2, 16)
            groups = [station, "32970" if hour % 6 else "12970", f"5{rng.randrange(1, 37):02d}{wind:02d}",
                      "1" + tenths(t), "2" + tenths(td), "3" + f"{int(round(p * 10)) % 10000:04d}"]
            if hour % 6 == 0:
                groups.append("60001" if rng.random() < 0.8 else "69901")
            if hour == 18:
                groups += ["333", "1" + tenths(t + 1.5)]
            # A few gaps: missing temperature or pressure.
            if both_missing or rng.random() < 0.06:
                groups[3] = "1////"
            if rng.random() < 0.04:
                groups[5] = "3////"
            lines.append(" ".join(groups) + "=")
with open(here / "synop.txt", "w") as f:
    f.write("\n".join(lines) + "\n")
