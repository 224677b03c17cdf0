"""Regenerates montage_25.dax: a 25-job Montage-style workflow description.

Structure: 6 mProjectPP jobs, 9 mDiffFit jobs over neighbouring overlaps,
1 mConcatFit, 1 mBgModel, 6 mBackground, 1 mImgtbl, 1 mAdd.
"""

from pathlib import Path

lines = ['<?xml version="1.0" encoding="UTF-8"?>']
lines.append('<adag xmlns="http://pegasus.isi.edu/schema/DAX" name="montage" jobCount="25">')

jobs = []
deps = []


def job(jid, name, runtime, uses):
    parts = [f'  <job id="{jid}" name="{name}" runtime="{runtime}">']
    for fname, link, size in uses:
        parts.append(f'    <uses file="{fname}" link="{link}" size="{size}"/>')
    parts.append("  </job>")
    jobs.append("\n".join(parts))


n_proj = 6
for i in range(n_proj):
    job(
        f"proj{i}", "mProjectPP", 12.0 + i,
        [(f"raw{i}.fits", "input", 2000000), (f"p{i}.fits", "output", 4100000 + i * 1000)],
    )

pairs = [(i, j) for i in range(n_proj) for j in range(i + 1, n_proj) if j - i <= 2][:9]
for k, (i, j) in enumerate(pairs):
    job(
        f"diff{k}", "mDiffFit", 5.5,
        [
            (f"p{i}.fits", "input", 0),
            (f"p{j}.fits", "input", 0),
            (f"fit{k}.txt", "output", 500 + k),
        ],
    )
    deps.append((f"proj{i}", f"diff{k}"))
    deps.append((f"proj{j}", f"diff{k}"))

job("concat", "mConcatFit", 9.0, [(f"fit{k}.txt", "input", 0) for k in range(len(pairs))] + [("fits.tbl", "output", 9000)])
deps += [(f"diff{k}", "concat") for k in range(len(pairs))]

job("bgmodel", "mBgModel", 31.0, [("fits.tbl", "input", 0), ("corrections.tbl", "output", 1200)])
deps.append(("concat", "bgmodel"))

for i in range(n_proj):
    job(
        f"bg{i}", "mBackground", 4.2,
        [
            (f"p{i}.fits", "input", 0),
            ("corrections.tbl", "input", 0),
            (f"c{i}.fits", "output", 4100000 + i * 1000),
        ],
    )
    deps.append(("bgmodel", f"bg{i}"))
    deps.append((f"proj{i}", f"bg{i}"))

job("imgtbl", "mImgtbl", 7.7, [(f"c{i}.fits", "input", 0) for i in range(n_proj)] + [("images.tbl", "output", 3000)])
deps += [(f"bg{i}", "imgtbl") for i in range(n_proj)]

job("madd", "mAdd", 48.0, [("images.tbl", "input", 0)] + [(f"c{i}.fits", "input", 0) for i in range(n_proj)] + [("mosaic.fits", "output", 26000000)])
deps.append(("imgtbl", "madd"))
deps += [(f"bg{i}", "madd") for i in range(n_proj)]

lines.extend(jobs)
by_child = {}
for parent, child in deps:
    by_child.setdefault(child, []).append(parent)
for child in sorted(by_child):
    lines.append(f'  <child ref="{child}">')
    for parent in sorted(set(by_child[child])):
        lines.append(f'    <parent ref="{parent}"/>')
    lines.append("  </child>")
lines.append("</adag>")

Path(__file__).with_name("montage_25.dax").write_text("\n".join(lines) + "\n")
print("wrote montage_25.dax")
