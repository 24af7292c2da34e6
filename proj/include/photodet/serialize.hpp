#pragma once

// Binary eigendata files. All integers are little-endian uint64 unless
// noted, reals are IEEE-754 binary64, complex values are (re, im) pairs.
//
//   eigensystem block
//     magic              8 bytes  "PDEIGSYS"
//     format version     uint64   (1)
//     conventions        uint64 length + UTF-8 text (see kConventions)
//     n_modes            uint64, followed by n_modes truncations
//     n_qubits           uint64
//     degeneracy_tol     real
//     dim                uint64
//     has_parity         uint64 (0/1)
//     energies           dim reals (ascending)
//     parity             dim int64 (+1/-1), only if has_parity
//     states             dim*dim complex, column-major (column k = |E_k>)
//
//   dressed-operator file = eigensystem block, then
//     magic              8 bytes  "PDDRESSD"
//     part               uint64 (0 positive, 1 negative, 2 full)
//     weighting          uint64 length + UTF-8 text
//     matrix             dim*dim complex, column-major, eigenbasis entries

#include "photodet/dressed.hpp"
#include "photodet/spectrum.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace photodet {

inline constexpr std::string_view kConventions =
    "basis=modes-then-qubits,mode0-fastest,qubit g=0 e=1;"
    "order=ascending energy, degenerate clusters by parity(+1 first) then dominant index;"
    "phase=dominant amplitude real positive";

void write_eigensystem(std::ostream& out, const EigenSystem& es);
EigenSystem read_eigensystem(std::istream& in);

void save_eigensystem(const std::filesystem::path& path, const EigenSystem& es);
EigenSystem load_eigensystem(const std::filesystem::path& path);

void save_dressed(const std::filesystem::path& path, const DressedOperator& op);
DressedOperator load_dressed(const std::filesystem::path& path);

}  // namespace photodet
