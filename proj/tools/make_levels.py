#!/usr/bin/env python3
"""Regenerates the bundled level corpus under levels/."""
import pathlib

N = 64
OUT = pathlib.Path(__file__).resolve().parent.parent / "levels"


def blank():
    g = [["." for _ in range(N)] for _ in range(N)]
    for i in range(N):
        g[0][i] = g[N - 1][i] = g[i][0] = g[i][N - 1] = "#"
    return g


def rooms():
    g = blank()
    walls = [21, 42]
    for w in walls:
        for i in range(N):
            g[w][i] = "#"
            g[i][w] = "#"
    # doors: (wall index, along-wall start) for vertical and horizontal walls
    for w, starts in zip(walls, [(8, 30, 50), (12, 33, 55)]):
        for s in starts:
            for d in range(3):
                g[s + d][w] = "."  # door in the vertical wall x = w
    for w, starts in zip(walls, [(5, 27, 47), (14, 34, 52)]):
        for s in starts:
            for d in range(3):
                g[w][s + d] = "."  # door in the horizontal wall y = w
    # furniture: pillars and an L-block per room
    for rx in (0, 21, 42):
        for ry in (0, 21, 42):
            for dx, dy in ((6, 6), (14, 14)):
                for a in range(2):
                    for b in range(2):
                        g[ry + dy + b][rx + dx + a] = "#"
    for x in range(47, 56):
        g[10][x] = "#"
    for y in range(10, 17):
        g[y][47] = "#"
    for x in range(5, 15):
        g[52][x] = "#"
    return g


def spawn(g, x=31, y=31):
    g[y][x] = "S"
    return g


def write(name, g):
    OUT.mkdir(exist_ok=True)
    (OUT / name).write_text("".join("".join(r) + "\n" for r in g))


def main():
    write("arena64.txt", spawn(blank()))
    write("rooms64.txt", spawn(rooms()))
    g = rooms()
    # A ghost partition in the east room. The NavMesh routes around it, so
    # only exploratory moves can cross it.
    for y in range(25, 38):
        g[y][53] = "G"
    write("ghost64.txt", spawn(g))
    small = [["." for _ in range(16)] for _ in range(16)]
    small[8][8] = "S"
    (OUT / "arena16.txt").write_text("".join("".join(r) + "\n" for r in small))


if __name__ == "__main__":
    main()
