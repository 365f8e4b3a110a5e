#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bpdd::kernels {

/// Instruction-set variants for the dense inner loops. The scalar backend is
/// the reference implementation; vector backends must agree with it up to
/// floating-point reassociation and are equivalence-tested against it.
enum class Backend { scalar, avx2, avx512 };

/// Backend in use. Resolved once on first call: honours the BPDD_KERNELS
/// environment variable (scalar|avx2|avx512|auto), otherwise picks the widest
/// instruction set the CPU supports.
Backend active_backend();

/// Overrides the active backend. Throws std::runtime_error if the requested
/// backend is not available on this machine.
void set_backend(Backend b);

std::vector<Backend> available_backends();
std::string backend_name(Backend b);

/// sum_i x[i]*y[i]
double dot(const double* x, const double* y, std::size_t len);

/// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t len);

/// out[j] = dot(cols + j*ld, y, rows) for j in [0, ncols). `cols` is a
/// column-major panel with leading dimension ld >= rows.
void panel_dots(const double* cols, std::size_t ld, std::size_t rows,
                std::size_t ncols, const double* y, double* out);

/// C = A^T B restricted to the given panels: C[i + j*na] = dot(A_i, B_j, rows)
/// with A, B column-major (leading dimensions lda, ldb) and C column-major
/// na x nb. This is the building block of the blocked incoherence scan.
void gram_block(const double* A, std::size_t lda, std::size_t na,
                const double* B, std::size_t ldb, std::size_t nb,
                std::size_t rows, double* C);

}  // namespace bpdd::kernels
