#!/usr/bin/env python3
"""Writes the Ukrainian public-holiday calendar used as the default H dummy.

Fixed-date holidays that fall on a weekend are observed on the next Monday;
Orthodox Easter and Trinity (always Sundays) are listed by their observed Monday.
"""
import datetime as dt
import sys


def orthodox_easter(year):
    a, b, c = year % 4, year % 7, year % 19
    d = (19 * c + 15) % 30
    e = (2 * a + 4 * b - d + 34) % 7
    month = (d + e + 114) // 31
    day = (d + e + 114) % 31 + 1
    # Julian -> Gregorian, valid 1900-2099
    return dt.date(year, month, day) + dt.timedelta(days=13)


def fixed(year):
    out = [
        (1, 1, "New Year"),
        (1, 7, "Orthodox Christmas"),
        (3, 8, "International Women's Day"),
        (5, 1, "Labour Day"),
        (5, 9, "Victory Day"),
        (6, 28, "Constitution Day"),
        (8, 24, "Independence Day"),
    ]
    if year < 2018:
        out.append((5, 2, "Labour Day (second day)"))
    if year >= 2015:
        out.append((10, 14, "Defender of Ukraine Day"))
    if year >= 2017:
        out.append((12, 25, "Christmas"))
    return [(dt.date(year, m, d), name) for m, d, name in out]


def holidays(first, last):
    days = {}
    for year in range(first, last + 1):
        for date, name in fixed(year):
            days.setdefault(date, name)
        easter = orthodox_easter(year)
        days.setdefault(easter + dt.timedelta(days=1), "Orthodox Easter (observed)")
        days.setdefault(easter + dt.timedelta(days=50), "Trinity (observed)")
    for date, name in sorted(days.items()):
        if date.weekday() >= 5:
            shifted = date + dt.timedelta(days=7 - date.weekday())
            while shifted in days:
                shifted += dt.timedelta(days=1)
            days[shifted] = name + " (observed)"
    return sorted(days.items())


def main():
    first, last = (int(sys.argv[1]), int(sys.argv[2])) if len(sys.argv) == 3 else (2001, 2025)
    print("date,name")
    for date, name in holidays(first, last):
        print(f"{date.isoformat()},{name}")


if __name__ == "__main__":
    main()
