#pragma once

#include <stdexcept>
#include <string>

#include "qinv/distributions.hpp"

namespace qinv::io {

/// Input that cannot be parsed; the message names the offending line.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed 17-significant-digit formatting; all emitted files use it so that
/// identical inputs produce byte-identical outputs.
std::string format_float(double v);

/// Write-temp-then-rename so partially written files are never observed.
void write_text_atomic(const std::string& path, const std::string& content);

/// Two-column "x,P" CSV with a header row; x must be strictly increasing and
/// uniformly spaced.
TabulatedPdf read_pdf_csv(const std::string& path);

}  // namespace qinv::io
