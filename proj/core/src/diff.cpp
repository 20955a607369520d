#include "hunkbench/diff.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

// The search, split heuristics, record cleanup and group compaction below
// follow the structure of the xdiff library bundled with git, so that a
// replayed merge finds the same conflict boundaries git reports.

namespace hunkbench {
namespace detail {
namespace {

constexpr long kMaxEqLimit = 1024;
constexpr long kSimscanWindow = 100;
constexpr long kKeepRunFactor = 4;
constexpr long kMaxCostMin = 256;
constexpr long kHeurMinCost = 256;
constexpr long kSnakeCount = 20;
constexpr long kHeurFactor = 4;
constexpr long kLineMax = std::numeric_limits<long>::max();

long bogosqrt(long n) {
    long i = 1;
    for (; n > 0; n >>= 2) i <<= 1;
    return i;
}

struct FileState {
    std::span<const std::uint32_t> ids;
    long nrec = 0;
    std::vector<char> rchg_storage;
    char* rchg = nullptr;  // valid for [-1, nrec]
    std::vector<long> rindex;
    std::vector<std::uint32_t> ha;
    long dstart = 0;
    long dend = -1;

    explicit FileState(std::span<const std::uint32_t> in)
        : ids(in), nrec(static_cast<long>(in.size())), rchg_storage(in.size() + 2, 0) {
        rchg = rchg_storage.data() + 1;
    }
};

struct SplitPoint {
    long i1 = 0;
    long i2 = 0;
    bool min_lo = false;
    bool min_hi = false;
};

struct SearchEnv {
    long mxcost = 0;
    long snake_cnt = kSnakeCount;
    long heur_min = kHeurMinCost;
};

void trim_ends(FileState& f1, FileState& f2) {
    long i = 0;
    long lim = std::min(f1.nrec, f2.nrec);
    for (; i < lim; ++i) {
        if (f1.ids[i] != f2.ids[i]) break;
    }
    f1.dstart = f2.dstart = i;

    lim -= i;
    long j = 0;
    for (; j < lim; ++j) {
        if (f1.ids[f1.nrec - 1 - j] != f2.ids[f2.nrec - 1 - j]) break;
    }
    f1.dend = f1.nrec - j - 1;
    f2.dend = f2.nrec - j - 1;
}

// A multi-match line is discarded only when it sits inside a run dominated
// by lines that have no match at all in the other file.
bool clean_multimatch(const std::vector<char>& dis, long i, long s, long e) {
    if (i - s > kSimscanWindow) s = i - kSimscanWindow;
    if (e - i > kSimscanWindow) e = i + kSimscanWindow;

    long r = 1;
    long rdis0 = 0;
    long rpdis0 = 1;
    for (; i - r >= s; ++r) {
        if (!dis[i - r]) {
            ++rdis0;
        } else if (dis[i - r] == 2) {
            ++rpdis0;
        } else {
            break;
        }
    }
    if (rdis0 == 0) return false;

    long rdis1 = 0;
    long rpdis1 = 1;
    for (r = 1; i + r <= e; ++r) {
        if (!dis[i + r]) {
            ++rdis1;
        } else if (dis[i + r] == 2) {
            ++rpdis1;
        } else {
            break;
        }
    }
    if (rdis1 == 0) return false;
    rdis1 += rdis0;
    rpdis1 += rpdis0;
    return rpdis1 * kKeepRunFactor < rpdis1 + rdis1;
}

void select_records(FileState& f, const std::vector<char>* dis) {
    for (long i = f.dstart; i <= f.dend; ++i) {
        bool keep = true;
        if (dis) {
            const char d = (*dis)[i];
            keep = d == 1 || (d == 2 && !clean_multimatch(*dis, i, f.dstart, f.dend));
        }
        if (keep) {
            f.rindex.push_back(i);
            f.ha.push_back(f.ids[i]);
        } else {
            f.rchg[i] = 1;
        }
    }
}

void cleanup_records(FileState& f1, FileState& f2, DiffMode mode) {
    if (mode == DiffMode::minimal) {
        select_records(f1, nullptr);
        select_records(f2, nullptr);
        return;
    }

    std::uint32_t max_id = 0;
    for (auto id : f1.ids) max_id = std::max(max_id, id);
    for (auto id : f2.ids) max_id = std::max(max_id, id);
    std::vector<long> count1(max_id + 1, 0);
    std::vector<long> count2(max_id + 1, 0);
    for (auto id : f1.ids) ++count1[id];
    for (auto id : f2.ids) ++count2[id];

    auto classify = [](const FileState& f, const std::vector<long>& other_counts) {
        std::vector<char> dis(static_cast<std::size_t>(f.nrec) + 1, 0);
        const long mlim = std::min(bogosqrt(f.nrec), kMaxEqLimit);
        for (long i = f.dstart; i <= f.dend; ++i) {
            const long nm = other_counts[f.ids[i]];
            dis[i] = nm == 0 ? 0 : (nm >= mlim ? 2 : 1);
        }
        return dis;
    };
    const auto dis1 = classify(f1, count2);
    const auto dis2 = classify(f2, count1);
    select_records(f1, &dis1);
    select_records(f2, &dis2);
}

long split(const std::uint32_t* ha1, long off1, long lim1, const std::uint32_t* ha2, long off2,
           long lim2, long* kvdf, long* kvdb, bool need_min, SplitPoint& spl,
           const SearchEnv& env) {
    const long dmin = off1 - lim2;
    const long dmax = lim1 - off2;
    const long fmid = off1 - off2;
    const long bmid = lim1 - lim2;
    const bool odd = ((fmid - bmid) & 1) != 0;
    long fmin = fmid;
    long fmax = fmid;
    long bmin = bmid;
    long bmax = bmid;

    kvdf[fmid] = off1;
    kvdb[bmid] = lim1;

    for (long ec = 1;; ++ec) {
        bool got_snake = false;

        if (fmin > dmin) {
            kvdf[--fmin - 1] = -1;
        } else {
            ++fmin;
        }
        if (fmax < dmax) {
            kvdf[++fmax + 1] = -1;
        } else {
            --fmax;
        }

        for (long d = fmax; d >= fmin; d -= 2) {
            long i1 = kvdf[d - 1] >= kvdf[d + 1] ? kvdf[d - 1] + 1 : kvdf[d + 1];
            const long prev1 = i1;
            long i2 = i1 - d;
            for (; i1 < lim1 && i2 < lim2 && ha1[i1] == ha2[i2]; ++i1, ++i2) {
            }
            if (i1 - prev1 > env.snake_cnt) got_snake = true;
            kvdf[d] = i1;
            if (odd && bmin <= d && d <= bmax && kvdb[d] <= i1) {
                spl = {i1, i2, true, true};
                return ec;
            }
        }

        if (bmin > dmin) {
            kvdb[--bmin - 1] = kLineMax;
        } else {
            ++bmin;
        }
        if (bmax < dmax) {
            kvdb[++bmax + 1] = kLineMax;
        } else {
            --bmax;
        }

        for (long d = bmax; d >= bmin; d -= 2) {
            long i1 = kvdb[d - 1] < kvdb[d + 1] ? kvdb[d - 1] : kvdb[d + 1] - 1;
            const long prev1 = i1;
            long i2 = i1 - d;
            for (; i1 > off1 && i2 > off2 && ha1[i1 - 1] == ha2[i2 - 1]; --i1, --i2) {
            }
            if (prev1 - i1 > env.snake_cnt) got_snake = true;
            kvdb[d] = i1;
            if (!odd && fmin <= d && d <= fmax && i1 <= kvdf[d]) {
                spl = {i1, i2, true, true};
                return ec;
            }
        }

        if (need_min) continue;

        // A long snake far from the origin is taken as a split point once the
        // search has become expensive.
        if (got_snake && ec > env.heur_min) {
            long best = 0;
            for (long d = fmax; d >= fmin; d -= 2) {
                const long dd = d > fmid ? d - fmid : fmid - d;
                const long i1 = kvdf[d];
                const long i2 = i1 - d;
                const long v = (i1 - off1) + (i2 - off2) - dd;
                if (v > kHeurFactor * ec && v > best && off1 + env.snake_cnt <= i1 &&
                    i1 < lim1 && off2 + env.snake_cnt <= i2 && i2 < lim2) {
                    for (long k = 1; ha1[i1 - k] == ha2[i2 - k]; ++k) {
                        if (k == env.snake_cnt) {
                            best = v;
                            spl.i1 = i1;
                            spl.i2 = i2;
                            break;
                        }
                    }
                }
            }
            if (best > 0) {
                spl.min_lo = true;
                spl.min_hi = false;
                return ec;
            }

            best = 0;
            for (long d = bmax; d >= bmin; d -= 2) {
                const long dd = d > bmid ? d - bmid : bmid - d;
                const long i1 = kvdb[d];
                const long i2 = i1 - d;
                const long v = (lim1 - i1) + (lim2 - i2) - dd;
                if (v > kHeurFactor * ec && v > best && off1 < i1 &&
                    i1 <= lim1 - env.snake_cnt && off2 < i2 && i2 <= lim2 - env.snake_cnt) {
                    for (long k = 0; ha1[i1 + k] == ha2[i2 + k]; ++k) {
                        if (k == env.snake_cnt - 1) {
                            best = v;
                            spl.i1 = i1;
                            spl.i2 = i2;
                            break;
                        }
                    }
                }
            }
            if (best > 0) {
                spl.min_lo = false;
                spl.min_hi = true;
                return ec;
            }
        }

        if (ec >= env.mxcost) {
            long fbest = -1;
            long fbest1 = -1;
            for (long d = fmax; d >= fmin; d -= 2) {
                long i1 = std::min(kvdf[d], lim1);
                long i2 = i1 - d;
                if (lim2 < i2) {
                    i1 = lim2 + d;
                    i2 = lim2;
                }
                if (fbest < i1 + i2) {
                    fbest = i1 + i2;
                    fbest1 = i1;
                }
            }

            long bbest = kLineMax;
            long bbest1 = kLineMax;
            for (long d = bmax; d >= bmin; d -= 2) {
                long i1 = std::max(off1, kvdb[d]);
                long i2 = i1 - d;
                if (i2 < off2) {
                    i1 = off2 + d;
                    i2 = off2;
                }
                if (i1 + i2 < bbest) {
                    bbest = i1 + i2;
                    bbest1 = i1;
                }
            }

            if ((lim1 + lim2) - bbest < fbest - (off1 + off2)) {
                spl = {fbest1, fbest - fbest1, true, false};
            } else {
                spl = {bbest1, bbest - bbest1, false, true};
            }
            return ec;
        }
    }
}

struct Compare {
    FileState& f1;
    FileState& f2;
    long* kvdf;
    long* kvdb;
    SearchEnv env;

    void run(long off1, long lim1, long off2, long lim2, bool need_min) {
        const auto* ha1 = f1.ha.data();
        const auto* ha2 = f2.ha.data();
        for (; off1 < lim1 && off2 < lim2 && ha1[off1] == ha2[off2]; ++off1, ++off2) {
        }
        for (; off1 < lim1 && off2 < lim2 && ha1[lim1 - 1] == ha2[lim2 - 1]; --lim1, --lim2) {
        }

        if (off1 == lim1) {
            for (; off2 < lim2; ++off2) f2.rchg[f2.rindex[off2]] = 1;
        } else if (off2 == lim2) {
            for (; off1 < lim1; ++off1) f1.rchg[f1.rindex[off1]] = 1;
        } else {
            SplitPoint spl;
            split(ha1, off1, lim1, ha2, off2, lim2, kvdf, kvdb, need_min, spl, env);
            run(off1, spl.i1, off2, spl.i2, spl.min_lo);
            run(spl.i1, lim1, spl.i2, lim2, spl.min_hi);
        }
    }
};

struct Group {
    long start = 0;
    long end = 0;
};

bool records_match(const FileState& f, long a, long b) { return f.ids[a] == f.ids[b]; }

void group_init(const FileState& f, Group& g) {
    g.start = g.end = 0;
    while (f.rchg[g.end]) ++g.end;
}

bool group_next(const FileState& f, Group& g) {
    if (g.end == f.nrec) return false;
    g.start = g.end + 1;
    for (g.end = g.start; f.rchg[g.end]; ++g.end) {
    }
    return true;
}

bool group_previous(const FileState& f, Group& g) {
    if (g.start == 0) return false;
    g.end = g.start - 1;
    for (g.start = g.end; f.rchg[g.start - 1]; --g.start) {
    }
    return true;
}

bool group_slide_down(FileState& f, Group& g) {
    if (g.end < f.nrec && records_match(f, g.start, g.end)) {
        f.rchg[g.start++] = 0;
        f.rchg[g.end++] = 1;
        while (f.rchg[g.end]) ++g.end;
        return true;
    }
    return false;
}

bool group_slide_up(FileState& f, Group& g) {
    if (g.start > 0 && records_match(f, g.start - 1, g.end - 1)) {
        f.rchg[--g.start] = 1;
        f.rchg[--g.end] = 0;
        while (f.rchg[g.start - 1]) --g.start;
        return true;
    }
    return false;
}

void sync_fail(const char* where) {
    throw std::logic_error(std::string("diff group sync broken: ") + where);
}

// Slides each run of changed lines as far as it can go, merging runs that
// touch, then settles it in the lowest position, or aligned with a run of
// changes in the other file when that is possible.
void compact(FileState& f, FileState& other) {
    Group g;
    Group go;
    group_init(f, g);
    group_init(other, go);

    while (true) {
        if (g.end != g.start) {
            long earliest_end = 0;
            long end_matching_other = -1;
            long groupsize = 0;
            do {
                groupsize = g.end - g.start;
                end_matching_other = -1;

                while (group_slide_up(f, g)) {
                    if (!group_previous(other, go)) sync_fail("sliding up");
                }
                earliest_end = g.end;
                if (go.end > go.start) end_matching_other = g.end;

                while (group_slide_down(f, g)) {
                    if (!group_next(other, go)) sync_fail("sliding down");
                    if (go.end > go.start) end_matching_other = g.end;
                }
            } while (groupsize != g.end - g.start);

            if (g.end != earliest_end && end_matching_other != -1) {
                while (go.end == go.start) {
                    if (!group_slide_up(f, g)) sync_fail("match disappeared");
                    if (!group_previous(other, go)) sync_fail("sliding to match");
                }
            }
        }

        if (!group_next(f, g)) break;
        if (!group_next(other, go)) sync_fail("moving to next group");
    }
}

std::vector<Change> build_script(const FileState& f1, const FileState& f2) {
    std::vector<Change> out;
    for (long i1 = f1.nrec, i2 = f2.nrec; i1 >= 0 || i2 >= 0; --i1, --i2) {
        if (f1.rchg[i1 - 1] || f2.rchg[i2 - 1]) {
            const long l1 = i1;
            const long l2 = i2;
            for (; f1.rchg[i1 - 1]; --i1) {
            }
            for (; f2.rchg[i2 - 1]; --i2) {
            }
            out.push_back({static_cast<std::size_t>(i1), static_cast<std::size_t>(i2),
                           static_cast<std::size_t>(l1 - i1), static_cast<std::size_t>(l2 - i2)});
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Change> diff_ids(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                             DiffMode mode) {
    FileState f1(a);
    FileState f2(b);
    trim_ends(f1, f2);
    cleanup_records(f1, f2, mode);

    const long n1 = static_cast<long>(f1.ha.size());
    const long n2 = static_cast<long>(f2.ha.size());
    const long ndiags = n1 + n2 + 3;
    std::vector<long> kvd(static_cast<std::size_t>(2 * ndiags + 2), 0);
    long* kvdf = kvd.data() + n2 + 1;
    long* kvdb = kvdf + ndiags;

    SearchEnv env;
    env.mxcost = std::max(bogosqrt(ndiags), kMaxCostMin);

    Compare cmp{f1, f2, kvdf, kvdb, env};
    cmp.run(0, n1, 0, n2, mode == DiffMode::minimal);

    compact(f1, f2);
    compact(f2, f1);
    return build_script(f1, f2);
}

}  // namespace detail

namespace {

struct Interner {
    std::unordered_map<std::string_view, std::uint32_t> ids;

    std::vector<std::uint32_t> intern(const std::vector<std::string>& lines) {
        std::vector<std::uint32_t> out;
        out.reserve(lines.size());
        for (const auto& line : lines) {
            auto [it, inserted] = ids.try_emplace(line, static_cast<std::uint32_t>(ids.size()));
            out.push_back(it->second);
        }
        return out;
    }
};

}  // namespace

EditScript diff_lines(const LineSeq& a, const LineSeq& b) {
    Interner interner;
    const auto ia = interner.intern(a.lines);
    const auto ib = interner.intern(b.lines);
    const auto changes = detail::diff_ids(ia, ib, detail::DiffMode::minimal);

    EditScript script;
    auto push_keep = [&](std::size_t n) {
        if (n == 0) return;
        if (!script.ops.empty()) {
            if (auto* k = std::get_if<Keep>(&script.ops.back())) {
                k->count += n;
                return;
            }
        }
        script.ops.emplace_back(Keep{n});
    };

    std::size_t pos = 0;
    for (const auto& c : changes) {
        push_keep(c.a_start - pos);
        if (c.a_count > 0) script.ops.emplace_back(Delete{c.a_count});
        if (c.b_count > 0) {
            Insert ins;
            ins.lines.assign(b.lines.begin() + static_cast<std::ptrdiff_t>(c.b_start),
                             b.lines.begin() + static_cast<std::ptrdiff_t>(c.b_start + c.b_count));
            script.ops.emplace_back(std::move(ins));
        }
        pos = c.a_start + c.a_count;
    }
    push_keep(a.lines.size() - pos);
    return script;
}

std::size_t EditScript::cost() const {
    std::size_t total = 0;
    for (const auto& op : ops) {
        if (const auto* d = std::get_if<Delete>(&op)) total += d->count;
        if (const auto* i = std::get_if<Insert>(&op)) total += i->lines.size();
    }
    return total;
}

std::size_t EditScript::source_length() const {
    std::size_t total = 0;
    for (const auto& op : ops) {
        if (const auto* k = std::get_if<Keep>(&op)) total += k->count;
        if (const auto* d = std::get_if<Delete>(&op)) total += d->count;
    }
    return total;
}

std::size_t EditScript::target_length() const {
    std::size_t total = 0;
    for (const auto& op : ops) {
        if (const auto* k = std::get_if<Keep>(&op)) total += k->count;
        if (const auto* i = std::get_if<Insert>(&op)) total += i->lines.size();
    }
    return total;
}

std::vector<std::string> EditScript::apply(const std::vector<std::string>& source) const {
    if (source_length() != source.size()) {
        throw std::invalid_argument("edit script does not match source length");
    }
    std::vector<std::string> out;
    out.reserve(target_length());
    std::size_t pos = 0;
    for (const auto& op : ops) {
        if (const auto* k = std::get_if<Keep>(&op)) {
            out.insert(out.end(), source.begin() + static_cast<std::ptrdiff_t>(pos),
                       source.begin() + static_cast<std::ptrdiff_t>(pos + k->count));
            pos += k->count;
        } else if (const auto* d = std::get_if<Delete>(&op)) {
            pos += d->count;
        } else {
            const auto& ins = std::get<Insert>(op);
            out.insert(out.end(), ins.lines.begin(), ins.lines.end());
        }
    }
    return out;
}

}  // namespace hunkbench
