#include "hunkbench/merge.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

#include "hunkbench/diff.hpp"

namespace hunkbench {

std::size_t MergeOutcome::conflict_count() const {
    std::size_t n = 0;
    for (const auto& r : regions) n += std::holds_alternative<ConflictRegion>(r) ? 1 : 0;
    return n;
}

std::size_t MergeOutcome::conflict_region_index(std::size_t k) const {
    std::size_t seen = 0;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        if (std::holds_alternative<ConflictRegion>(regions[i])) {
            if (seen == k) return i;
            ++seen;
        }
    }
    throw std::out_of_range("conflict index " + std::to_string(k) + " out of range");
}

const ConflictRegion& MergeOutcome::conflict(std::size_t k) const {
    return std::get<ConflictRegion>(regions[conflict_region_index(k)]);
}

namespace {

LineSeq take_side(const MergeOutcome& o, bool left) {
    LineSeq out;
    bool first = true;
    for (const auto& r : o.regions) {
        const LineSeq* part = nullptr;
        if (const auto* s = std::get_if<StableRegion>(&r)) {
            part = &s->lines;
        } else {
            const auto& c = std::get<ConflictRegion>(r);
            part = left ? &c.left : &c.right;
        }
        if (first) {
            out.eol = part->eol;
            first = false;
        }
        out.lines.insert(out.lines.end(), part->lines.begin(), part->lines.end());
        out.final_newline = part->final_newline;
    }
    return out;
}

struct Record {
    const std::string* text = nullptr;
    bool terminated = true;
};

struct Doc {
    std::vector<Record> records;
    std::vector<std::uint32_t> ids;
};

class Interner {
public:
    Doc add(const LineSeq& seq) {
        Doc doc;
        doc.records.reserve(seq.lines.size());
        doc.ids.reserve(seq.lines.size());
        for (std::size_t i = 0; i < seq.lines.size(); ++i) {
            const bool terminated = seq.final_newline || i + 1 < seq.lines.size();
            std::string key;
            key.reserve(seq.lines[i].size() + 1);
            key.push_back(terminated ? 'T' : 'U');
            key += seq.lines[i];
            auto [it, inserted] = ids_.try_emplace(std::move(key), static_cast<std::uint32_t>(ids_.size()));
            doc.records.push_back({&seq.lines[i], terminated});
            doc.ids.push_back(it->second);
        }
        return doc;
    }

private:
    std::unordered_map<std::string, std::uint32_t> ids_;
};

enum class ChunkMode { conflict = 0, left = 1, right = 2 };

// Positions are line indexes: 0 = base, 1 = left, 2 = right.
struct Chunk {
    ChunkMode mode;
    long i0, chg0, i1, chg1, i2, chg2;
};

void append_chunk(std::vector<Chunk>& chunks, ChunkMode mode, long i0, long chg0, long i1, long chg1,
                  long i2, long chg2) {
    if (!chunks.empty()) {
        auto& m = chunks.back();
        if (i1 <= m.i1 + m.chg1 || i2 <= m.i2 + m.chg2) {
            if (mode != m.mode) m.mode = ChunkMode::conflict;
            m.chg0 = i0 + chg0 - m.i0;
            m.chg1 = i1 + chg1 - m.i1;
            m.chg2 = i2 + chg2 - m.i2;
            return;
        }
    }
    chunks.push_back({mode, i0, chg0, i1, chg1, i2, chg2});
}

bool same_lines(const Doc& a, long ia, const Doc& b, long ib, long n) {
    for (long k = 0; k < n; ++k) {
        if (a.ids[ia + k] != b.ids[ib + k]) return false;
    }
    return true;
}

std::vector<Chunk> merge_changes(const std::vector<detail::Change>& c1, const Doc& left,
                                 const std::vector<detail::Change>& c2, const Doc& right,
                                 long base_len, long left_len, long right_len) {
    std::vector<Chunk> chunks;
    std::size_t a = 0;
    std::size_t b = 0;
    auto L = [](std::size_t v) { return static_cast<long>(v); };

    while (a < c1.size() && b < c2.size()) {
        const auto& x1 = c1[a];
        const auto& x2 = c2[b];
        if (L(x1.a_start + x1.a_count) < L(x2.a_start)) {
            append_chunk(chunks, ChunkMode::left, L(x1.a_start), L(x1.a_count), L(x1.b_start),
                         L(x1.b_count), L(x2.b_start) - L(x2.a_start) + L(x1.a_start),
                         L(x1.a_count));
            ++a;
            continue;
        }
        if (L(x2.a_start + x2.a_count) < L(x1.a_start)) {
            append_chunk(chunks, ChunkMode::right, L(x2.a_start), L(x2.a_count),
                         L(x1.b_start) - L(x1.a_start) + L(x2.a_start), L(x2.a_count),
                         L(x2.b_start), L(x2.b_count));
            ++b;
            continue;
        }
        const bool identical = x1.a_start == x2.a_start && x1.a_count == x2.a_count &&
                               x1.b_count == x2.b_count &&
                               same_lines(left, L(x1.b_start), right, L(x2.b_start), L(x1.b_count));
        if (!identical) {
            const long off = L(x1.a_start) - L(x2.a_start);
            const long ffo = off + L(x1.a_count) - L(x2.a_count);
            long i0 = L(x1.a_start);
            long i1 = L(x1.b_start);
            long i2 = L(x2.b_start);
            if (off > 0) {
                i0 -= off;
                i1 -= off;
            } else {
                i2 += off;
            }
            long chg0 = L(x1.a_start + x1.a_count) - i0;
            long chg1 = L(x1.b_start + x1.b_count) - i1;
            long chg2 = L(x2.b_start + x2.b_count) - i2;
            if (ffo < 0) {
                chg0 -= ffo;
                chg1 -= ffo;
            } else {
                chg2 += ffo;
            }
            append_chunk(chunks, ChunkMode::conflict, i0, chg0, i1, chg1, i2, chg2);
        }

        const long end1 = L(x1.a_start + x1.a_count);
        const long end2 = L(x2.a_start + x2.a_count);
        if (end1 >= end2) ++b;
        if (end2 >= end1) ++a;
    }
    for (; a < c1.size(); ++a) {
        const auto& x1 = c1[a];
        append_chunk(chunks, ChunkMode::left, L(x1.a_start), L(x1.a_count), L(x1.b_start),
                     L(x1.b_count), L(x1.a_start) + right_len - base_len, L(x1.a_count));
    }
    for (; b < c2.size(); ++b) {
        const auto& x2 = c2[b];
        append_chunk(chunks, ChunkMode::right, L(x2.a_start), L(x2.a_count),
                     L(x2.a_start) + left_len - base_len, L(x2.a_count), L(x2.b_start),
                     L(x2.b_count));
    }
    return chunks;
}

std::vector<Chunk> coalesce(std::vector<Chunk> chunks, std::size_t gap) {
    if (gap == 0) return chunks;
    std::vector<Chunk> out;
    std::size_t i = 0;
    while (i < chunks.size()) {
        if (chunks[i].mode != ChunkMode::conflict) {
            out.push_back(chunks[i++]);
            continue;
        }
        Chunk acc = chunks[i];
        std::size_t j = i + 1;
        while (true) {
            std::size_t k = j;
            long between = 0;
            long cursor = acc.i1 + acc.chg1;
            while (k < chunks.size() && chunks[k].mode != ChunkMode::conflict) {
                between += chunks[k].i1 - cursor;
                between += chunks[k].mode == ChunkMode::left ? chunks[k].chg1 : chunks[k].chg2;
                cursor = chunks[k].i1 + chunks[k].chg1;
                ++k;
            }
            if (k == chunks.size()) break;
            between += chunks[k].i1 - cursor;
            if (between >= static_cast<long>(gap)) break;
            const auto& next = chunks[k];
            acc.chg0 = next.i0 + next.chg0 - acc.i0;
            acc.chg1 = next.i1 + next.chg1 - acc.i1;
            acc.chg2 = next.i2 + next.chg2 - acc.i2;
            j = k + 1;
        }
        out.push_back(acc);
        i = j;
    }
    return out;
}

class OutcomeBuilder {
public:
    explicit OutcomeBuilder(Eol eol) : eol_(eol) {}

    void stable(const Doc& doc, long from, long count) {
        for (long k = 0; k < count; ++k) pending_.push_back(doc.records[from + k]);
    }

    void conflict(const Doc& base, long i0, long chg0, const Doc& left, long i1, long chg1,
                  const Doc& right, long i2, long chg2) {
        flush();
        ConflictRegion c;
        c.left = side(left, i1, chg1);
        c.base = side(base, i0, chg0);
        c.right = side(right, i2, chg2);
        out_.regions.emplace_back(std::move(c));
    }

    MergeOutcome finish() {
        flush();
        return std::move(out_);
    }

private:
    LineSeq side(const Doc& doc, long from, long count) const {
        LineSeq s;
        s.eol = eol_;
        for (long k = 0; k < count; ++k) s.lines.push_back(*doc.records[from + k].text);
        return s;
    }

    void flush() {
        if (pending_.empty()) return;
        StableRegion r;
        r.lines.eol = eol_;
        for (const auto& rec : pending_) r.lines.lines.push_back(*rec.text);
        r.lines.final_newline = pending_.back().terminated;
        out_.regions.emplace_back(std::move(r));
        pending_.clear();
    }

    Eol eol_;
    std::vector<Record> pending_;
    MergeOutcome out_;
};

MergeOutcome whole_document(const LineSeq& doc) {
    MergeOutcome out;
    if (!doc.lines.empty()) out.regions.emplace_back(StableRegion{doc});
    return out;
}

}  // namespace

LineSeq MergeOutcome::take_left() const { return take_side(*this, true); }
LineSeq MergeOutcome::take_right() const { return take_side(*this, false); }

MergeOutcome merge3(const LineSeq& base, const LineSeq& left, const LineSeq& right,
                    const MergeOptions& options) {
    Interner interner;
    const Doc b = interner.add(base);
    const Doc l = interner.add(left);
    const Doc r = interner.add(right);

    const auto c1 = detail::diff_ids(b.ids, l.ids, detail::DiffMode::git_compatible);
    const auto c2 = detail::diff_ids(b.ids, r.ids, detail::DiffMode::git_compatible);
    if (c1.empty()) return whole_document(right);
    if (c2.empty()) return whole_document(left);

    const auto chunks = coalesce(
        merge_changes(c1, l, c2, r, static_cast<long>(base.size()), static_cast<long>(left.size()),
                      static_cast<long>(right.size())),
        options.coalesce_gap);

    OutcomeBuilder builder(left.eol);
    long pos = 0;
    for (const auto& m : chunks) {
        builder.stable(l, pos, m.i1 - pos);
        switch (m.mode) {
            case ChunkMode::conflict:
                builder.conflict(b, m.i0, m.chg0, l, m.i1, m.chg1, r, m.i2, m.chg2);
                break;
            case ChunkMode::left:
                builder.stable(l, m.i1, m.chg1);
                break;
            case ChunkMode::right:
                builder.stable(r, m.i2, m.chg2);
                break;
        }
        pos = m.i1 + m.chg1;
    }
    builder.stable(l, pos, static_cast<long>(left.size()) - pos);
    return builder.finish();
}

}  // namespace hunkbench
