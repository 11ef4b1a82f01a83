#include "rdhei/space_alloc.hpp"

#include "rdhei/error.hpp"

namespace rdhei::space_alloc {

bool embeddable(int id, std::int64_t i, int r, int n) {
    const std::int64_t d = (static_cast<std::int64_t>(id) - i) % n;
    const std::int64_t offset = d < 0 ? d + n : d;
    return offset <= r - 2;
}

std::vector<std::int64_t> embed_indices(int id, std::int64_t bn, int block_side,
                                        int r, int n) {
    if (id < 0 || id >= n)
        throw ParamError("embed_indices: id out of range");
    const std::int64_t bs = static_cast<std::int64_t>(block_side) * block_side;
    const std::int64_t total = bn * (bs - 1);
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(total / n * (r - 1) + n));
    for (std::int64_t i = 0; i < total; ++i)
        if (embeddable(id, i, r, n))
            out.push_back(i);
    return out;
}

namespace {

// #{ i in [0, bn) : i mod n == residue }
std::int64_t residue_count(std::int64_t residue, std::int64_t bn, int n) {
    if (residue >= bn)
        return 0;
    return (bn - 1 - residue) / n + 1;
}

} // namespace

std::int64_t count_fp(int id, std::int64_t bn, int r, int n) {
    if (id < 0 || id >= n)
        throw ParamError("count_fp: id out of range");
    std::int64_t total = 0;
    for (int t = 0; t <= r - 2; ++t) {
        const int residue = ((id - t) % n + n) % n;
        total += residue_count(residue, bn, n);
    }
    return total;
}

std::int64_t count_wb(int id, std::int64_t bn, int r, int n) {
    return bn - count_fp(id, bn, r, n);
}

} // namespace rdhei::space_alloc
