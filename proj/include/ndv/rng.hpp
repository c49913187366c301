#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace ndv {

// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The std:: distributions are implementation-defined, so the
// conversions below are done by hand to keep runs bit-identical across
// toolchains.
using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

/// FNV-1a, used to turn experiment labels into seed components.
constexpr std::uint64_t hash_label(std::string_view s)
{
	std::uint64_t h = 0xcbf29ce484222325ULL;
	for (char c : s) {
		h ^= std::uint8_t(c);
		h *= 0x100000001b3ULL;
	}
	return h;
}

/// Seed for one unit of work, independent of scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path)
{
	std::uint64_t h = splitmix64(master);
	for (std::uint64_t p : path)
		h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
	return h;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& rng) { return double(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound), bound > 0. Rejection keeps it unbiased.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound)
{
	const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
	std::uint64_t x;
	do
		x = rng();
	while (x >= limit);
	return x % bound;
}

} // namespace ndv
