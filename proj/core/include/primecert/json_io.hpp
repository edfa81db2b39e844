#pragma once

#include <string>

#include "primecert/certify.hpp"
#include "primecert/errors.hpp"

namespace primecert {

// Canonical JSON form of a certificate: fixed field order, big integers
// and rationals as decimal strings, two-space indentation, trailing
// newline. Byte-identical for identical certificates.
std::string certificate_to_json(const Certificate& cert);

// Strict parse: rejects bad JSON, unknown version, missing, extra,
// reordered, or mistyped fields (malformed_certificate).
Certificate certificate_from_json(const std::string& text);

// Parse then verify; malformed input still throws.
VerifyOutcome verify_certificate_json(const std::string& text, int threads = 1);

// Write via a temp file in the same directory plus rename, so readers
// never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace primecert
