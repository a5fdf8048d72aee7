#ifndef F2CS_BIGINT_HPP
#define F2CS_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace f2cs {

// Solution counts routinely exceed 2^32 (and can exceed 2^64 for wide
// degree-of-freedom charsets), so all counting goes through cpp_int.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(unsigned k) { return BigInt(1) << k; }

} // namespace f2cs

#endif
