#pragma once

#include <cstdint>
#include <vector>

// Which pixel shares each encrypted image may overwrite (high-capacity
// scheme) and which blocks it reduces to their first pixel (size-reduced
// scheme). Both follow the same sliding window: index i is assigned to the
// r-1 images (i+t) mod n, t in [0, r-2].
namespace rdhei::space_alloc {

// True when image `id` owns index i, i.e. (id - i) mod n is in [0, r-2].
// Applied to EP indices (non-first pixels) it marks embeddable shares;
// applied to block indices it marks blocks reduced to their first pixel.
bool embeddable(int id, std::int64_t i, int r, int n);

// Ascending EP indices image `id` may overwrite; EP enumerates all
// non-first pixels in block raster order, so EP index
// i = block * (BS-1) + (j-1) for block-internal pixel j >= 1.
std::vector<std::int64_t> embed_indices(int id, std::int64_t bn, int block_side,
                                        int r, int n);

// Block counts for the size-reduced layout: fp = blocks kept as a single
// first pixel, wb = blocks kept whole. Closed forms over the window
// residues; fp + wb = bn.
std::int64_t count_fp(int id, std::int64_t bn, int r, int n);
std::int64_t count_wb(int id, std::int64_t bn, int r, int n);

} // namespace rdhei::space_alloc
