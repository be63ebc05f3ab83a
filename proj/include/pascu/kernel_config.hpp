#pragma once

#include <istream>
#include <map>
#include <string>

#include "pascu/kernel.hpp"

namespace pascu {

/// Parses "family:key=value,key=value", e.g. "bernardi:c=0", "komatu:c=-0.5,p=3",
/// "ab_power:a=-0.5,b=2", "hypergeom:A=0,B=0.5,C=3,profile=komatu,p=3",
/// "tabulated:file=samples.txt" (two columns t lambda) or
/// "tabulated:t=0;0.5;1,lambda=1;1;1". Throws DomainError on malformed input.
KernelParams parse_kernel_spec(const std::string& text);

/// Inverse of parse_kernel_spec for the parametric families; tabulated
/// kernels render their samples inline.
std::string render_kernel_spec(const KernelParams& params);

/// Flat "key=value" lines; '#' starts a comment, blank lines are skipped.
/// Later keys override earlier ones. Throws DomainError naming the bad line.
std::map<std::string, std::string> parse_key_value(std::istream& in);

/// Collects "kernel.*" keys (kernel.family plus parameters) into a spec string.
/// Returns an empty string when no kernel keys are present.
std::string kernel_spec_from_config(const std::map<std::string, std::string>& kv);

/// Strict number parsing for configuration values.
double parse_number(const std::string& key, const std::string& text);

}  // namespace pascu
