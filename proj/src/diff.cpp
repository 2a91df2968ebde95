#include "rsynth/diff.hpp"

#include <algorithm>
#include <set>

namespace rsynth {

namespace {

struct Range {
    std::size_t alo, ahi, blo, bhi;
};

// Longest common block of a[alo:ahi] and b[blo:bhi]; ties go to the smallest
// source position, then the smallest target position.
MatchBlock longest_match(TextView a, TextView b, const Range& r, std::vector<std::size_t>& prev,
                         std::vector<std::size_t>& cur) {
    MatchBlock best{r.alo, r.blo, 0};
    const std::size_t width = r.bhi - r.blo;
    prev.assign(width + 1, 0);
    cur.assign(width + 1, 0);
    for (std::size_t i = r.alo; i < r.ahi; ++i) {
        for (std::size_t j = r.blo; j < r.bhi; ++j) {
            const std::size_t col = j - r.blo + 1;
            if (a[i] == b[j]) {
                const std::size_t k = prev[col - 1] + 1;
                cur[col] = k;
                if (k > best.size) best = MatchBlock{i + 1 - k, j + 1 - k, k};
            } else {
                cur[col] = 0;
            }
        }
        std::swap(prev, cur);
    }
    return best;
}

}  // namespace

std::vector<MatchBlock> matching_blocks(TextView a, TextView b) {
    std::vector<MatchBlock> blocks;
    std::vector<Range> pending{{0, a.size(), 0, b.size()}};
    std::vector<std::size_t> prev, cur;
    while (!pending.empty()) {
        const Range r = pending.back();
        pending.pop_back();
        if (r.alo >= r.ahi || r.blo >= r.bhi) continue;
        const MatchBlock m = longest_match(a, b, r, prev, cur);
        if (m.size == 0) continue;
        blocks.push_back(m);
        pending.push_back({r.alo, m.a, r.blo, m.b});
        pending.push_back({m.a + m.size, r.ahi, m.b + m.size, r.bhi});
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const MatchBlock& x, const MatchBlock& y) { return x.a < y.a; });
    // Collapse adjacent blocks.
    std::vector<MatchBlock> merged;
    for (const auto& blk : blocks) {
        if (!merged.empty() && merged.back().a + merged.back().size == blk.a &&
            merged.back().b + merged.back().size == blk.b) {
            merged.back().size += blk.size;
        } else {
            merged.push_back(blk);
        }
    }
    return merged;
}

std::vector<EditRegion> align(TextView a, TextView b) {
    std::vector<EditRegion> regions;
    auto blocks = matching_blocks(a, b);
    blocks.push_back(MatchBlock{a.size(), b.size(), 0});
    std::size_t i = 0, j = 0, prev_size = 0;
    for (const auto& blk : blocks) {
        if (i < blk.a || j < blk.b) {
            EditRegion region;
            region.src = Span{i, blk.a};
            region.dst = Span{j, blk.b};
            if (i < blk.a && j < blk.b) {
                region.kind = EditKind::substitute;
            } else if (i < blk.a) {
                region.kind = EditKind::remove;
            } else {
                region.kind = EditKind::insert;
            }
            region.left_match = prev_size;
            region.right_match = blk.size;
            regions.push_back(region);
        }
        i = blk.a + blk.size;
        j = blk.b + blk.size;
        prev_size = blk.size;
    }
    return regions;
}

Text replay_regions(TextView a, TextView b, std::span<const EditRegion> regions) {
    Text out;
    std::size_t i = 0;
    for (const auto& r : regions) {
        out.append(a.substr(i, r.src.begin - i));
        out.append(b.substr(r.dst.begin, r.dst.size()));
        i = r.src.end;
    }
    out.append(a.substr(i));
    return out;
}

namespace {

void try_add(std::set<ReplaceOp>& out, Text pattern, Text replacement) {
    if (pattern.empty() || pattern.size() > kMaxPatternLength) return;
    if (replacement.size() > kMaxReplacementLength || pattern == replacement) return;
    out.emplace(std::move(pattern), std::move(replacement));
}

// Long regions become a chain: first source chunk rewritten to the first
// target chunk, remaining source chunks deleted, remaining target text
// inserted two characters at a time behind a one-character anchor.
void add_split_chain(std::set<ReplaceOp>& out, TextView cur, const EditRegion& r, TextView src, TextView dst) {
    std::size_t taken = 0;
    char32_t anchor = 0;
    bool anchor_after = false;  // anchor sits after the inserted text
    if (!src.empty()) {
        const auto first_dst = dst.substr(0, std::min<std::size_t>(3, dst.size()));
        try_add(out, Text(src.substr(0, 3)), Text(first_dst));
        for (std::size_t k = 3; k < src.size(); k += 3) try_add(out, Text(src.substr(k, 3)), Text());
        taken = first_dst.size();
        if (taken > 0) anchor = first_dst.back();
    } else if (r.left_match > 0) {
        anchor = cur[r.src.begin - 1];
    } else if (r.right_match > 0) {
        anchor = cur[r.src.end];
        anchor_after = true;
    }
    if (anchor == 0) return;
    while (taken < dst.size()) {
        const auto piece = dst.substr(taken, 2);
        Text repl;
        if (anchor_after) {
            repl.append(piece);
            repl.push_back(anchor);
        } else {
            repl.push_back(anchor);
            repl.append(piece);
        }
        try_add(out, Text(1, anchor), std::move(repl));
        if (!anchor_after) anchor = piece.back();
        taken += piece.size();
    }
}

void region_candidates(std::set<ReplaceOp>& out, TextView cur, TextView tgt, const EditRegion& r,
                       std::size_t max_context) {
    const TextView src = cur.substr(r.src.begin, r.src.size());
    const TextView dst = tgt.substr(r.dst.begin, r.dst.size());
    if (src.size() > kMaxPatternLength || dst.size() > kMaxReplacementLength) {
        add_split_chain(out, cur, r, src, dst);
        return;
    }
    // An insertion has no source text, so it needs at least one anchor character.
    const std::size_t ctx = src.empty() ? std::max<std::size_t>(max_context, 1) : max_context;
    const std::size_t max_left = std::min(ctx, r.left_match);
    const std::size_t max_right = std::min(ctx, r.right_match);
    for (std::size_t kl = 0; kl <= max_left; ++kl) {
        for (std::size_t kr = 0; kr <= max_right; ++kr) {
            if (src.size() + kl + kr > kMaxPatternLength) break;
            if (src.empty() && kl + kr == 0) continue;
            Text pattern(cur.substr(r.src.begin - kl, kl + src.size() + kr));
            Text repl(cur.substr(r.src.begin - kl, kl));
            repl.append(dst);
            repl.append(cur.substr(r.src.end, kr));
            try_add(out, std::move(pattern), std::move(repl));
        }
    }
}

}  // namespace

CandidateSet extract_candidates(std::span<const StringPair> pairs, std::size_t max_context, std::size_t cap) {
    std::map<ReplaceOp, int> counts;
    for (const auto& pair : pairs) {
        if (pair.current == pair.target) continue;
        std::set<ReplaceOp> proposed;
        for (const auto& region : align(pair.current, pair.target)) {
            region_candidates(proposed, pair.current, pair.target, region, max_context);
        }
        for (const auto& op : proposed) ++counts[op];
    }

    CandidateSet set;
    std::vector<std::pair<ReplaceOp, int>> ranked;
    for (auto& [op, n] : counts) {
        const bool live = std::any_of(pairs.begin(), pairs.end(), [&](const StringPair& p) {
            return p.current.find(op.pattern()) != TextView::npos;
        });
        if (live) ranked.emplace_back(op, n);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    if (ranked.size() > cap) ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(cap), ranked.end());
    for (auto& [op, n] : ranked) {
        set.ops.push_back(op);
        set.origin.emplace(op, n);
    }
    return set;
}

}  // namespace rsynth
