#include "oracles.hpp"

#include <horizonsel/metrics.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace horizonsel;
using metrics::bias;
using metrics::gra;
using metrics::mae;
using metrics::mape;
using metrics::r2;
using metrics::rmse;
using metrics::rmsse;
using metrics::smape;
using V = std::vector<double>;

TEST(Metrics, Mae) {
	EXPECT_EQ(mae(V{1, 2, 3}, V{1, 2, 3}), 0.0);
	EXPECT_NEAR(mae(V{2, 4}, V{1, 2}), 1.5, 1e-12);
	EXPECT_NEAR(mae(V{0, 0}, V{3, -3}), 3.0, 1e-12);
}

TEST(Metrics, Rmse) {
	EXPECT_EQ(rmse(V{1, 2}, V{1, 2}), 0.0);
	EXPECT_NEAR(rmse(V{0, 0}, V{3, 4}), 3.5355339059327378, 1e-12);
	EXPECT_NEAR(rmse(V{5}, V{2}), 3.0, 1e-12);
}

TEST(Metrics, Rmsse) {
	EXPECT_EQ(rmsse(V{1, 2, 3, 4}, V{5, 6}, V{5, 6}), 0.0);
	EXPECT_NEAR(rmsse(V{1, 2, 3, 4}, V{5, 6}, V{6, 7}), 1.0, 1e-12);
	try {
		rmsse(V{2, 2, 2}, V{1}, V{2});
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.code(), ErrorCode::FlatTrainingSeries);
	}
}

TEST(Metrics, Mape) {
	EXPECT_NEAR(*mape(V{100}, V{110}), 10.0, 1e-12);
	EXPECT_NEAR(*mape(V{4, 0}, V{2, 5}), 50.0, 1e-12);
	EXPECT_FALSE(mape(V{0, 0}, V{1, 1}).has_value());
}

TEST(Metrics, Smape) {
	EXPECT_EQ(smape(V{3, 7}, V{3, 7}), 0.0);
	EXPECT_NEAR(smape(V{0}, V{5}), 2.0, 1e-12);
	EXPECT_NEAR(smape(V{0, 10}, V{0, 30}), 0.5, 1e-12);
}

TEST(Metrics, R2) {
	EXPECT_NEAR(*r2(V{1, 2, 3}, V{1, 2, 3}), 1.0, 1e-12);
	EXPECT_NEAR(*r2(V{1, 2, 3}, V{2, 2, 2}), 0.0, 1e-12);
	EXPECT_FALSE(r2(V{4, 4}, V{1, 9}).has_value());
}

TEST(Metrics, Bias) {
	EXPECT_NEAR(bias(V{1, 2}, V{2, 3}), -1.0, 1e-12);
	EXPECT_EQ(bias(V{5, 5}, V{5, 5}), 0.0);
	EXPECT_EQ(bias(V{10, 0}, V{0, 10}), 0.0);
}

TEST(Metrics, Gra) {
	EXPECT_NEAR(gra(V{3, 7}, V{6, 4}), 1.0, 1e-12);
	EXPECT_NEAR(gra(V{10, 10}, V{15, 15}), 0.5, 1e-12);
	EXPECT_NEAR(gra(V{10, 10}, V{30, 30}), -1.0, 1e-12);
	try {
		gra(V{0, 0}, V{1, 1});
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.code(), ErrorCode::ZeroTotalDemand);
	}
}

TEST(Metrics, InputErrors) {
	auto code = [](auto fn) {
		try {
			fn();
		} catch (const Error &e) {
			return e.code();
		}
		return ErrorCode::InvalidArgument;
	};
	EXPECT_EQ(code([] { mae(V{1, 2}, V{1}); }), ErrorCode::LengthMismatch);
	EXPECT_EQ(code([] { rmse(V{}, V{}); }), ErrorCode::EmptyInput);
	EXPECT_EQ(code([] { smape(V{1, NAN}, V{1, 2}); }), ErrorCode::NonFiniteValue);
}

TEST(MetricsProperties, IdentityInvariants) {
	oracle::Rng rng(1);
	for (int trial = 0; trial < 500; ++trial) {
		const auto y = rng.vec(static_cast<std::size_t>(rng.integer(1, 20)), 0.0, 100.0);
		EXPECT_EQ(mae(y, y), 0.0);
		EXPECT_EQ(rmse(y, y), 0.0);
		EXPECT_EQ(smape(y, y), 0.0);
		EXPECT_EQ(bias(y, y), 0.0);
		EXPECT_NEAR(gra(y, y), 1.0, 1e-15);
	}
}

TEST(MetricsProperties, ScalingLaws) {
	oracle::Rng rng(2);
	for (int trial = 0; trial < 500; ++trial) {
		const auto n = static_cast<std::size_t>(rng.integer(2, 20));
		const auto train = rng.vec(n + 2, 1.0, 100.0);
		const auto y = rng.vec(n, 1.0, 100.0);
		const auto p = rng.vec(n, 0.0, 100.0);
		const double k = rng.uniform(0.1, 50.0);
		auto sc = [k](V v) {
			for (auto &x : v) {
				x *= k;
			}
			return v;
		};
		const double tol = 1e-9;
		EXPECT_NEAR(mae(sc(y), sc(p)), k * mae(y, p), tol * k * mae(y, p) + 1e-12);
		EXPECT_NEAR(rmse(sc(y), sc(p)), k * rmse(y, p), tol * k * rmse(y, p) + 1e-12);
		EXPECT_NEAR(std::abs(bias(sc(y), sc(p))), k * std::abs(bias(y, p)), tol * k * 100.0);
		EXPECT_NEAR(smape(sc(y), sc(p)), smape(y, p), tol);
		EXPECT_NEAR(*mape(sc(y), sc(p)), *mape(y, p), tol * 100.0);
		EXPECT_NEAR(gra(sc(y), sc(p)), gra(y, p), tol);
		EXPECT_NEAR(rmsse(sc(train), sc(y), sc(p)), rmsse(train, y, p), tol * std::max(1.0, rmsse(train, y, p)));
		const auto a = r2(y, p), b = r2(sc(y), sc(p));
		ASSERT_EQ(a.has_value(), b.has_value());
		if (a) {
			EXPECT_NEAR(*a, *b, tol * std::max(1.0, std::abs(*a)));
		}
	}
}

TEST(MetricsProperties, GraDependsOnlyOnSums) {
	oracle::Rng rng(4);
	for (int trial = 0; trial < 300; ++trial) {
		auto y = rng.vec(static_cast<std::size_t>(rng.integer(1, 15)), 0.5, 10.0);
		auto p = rng.vec(y.size(), 0.0, 20.0);
		const double before = gra(y, p);
		rng.shuffle(y);
		rng.shuffle(p);
		EXPECT_NEAR(gra(y, p), before, 1e-12);
		EXPECT_LE(before, 1.0);
	}
}

TEST(MetricsProperties, MetricSetAgreesWithScalarFunctions) {
	const V train{3, 5, 4, 6, 8};
	const V y{7, 9, 0};
	const V p{6, 10, 1};
	const auto m = metrics::compute_metric_set(train, y, p);
	EXPECT_EQ(m.mae, mae(y, p));
	EXPECT_EQ(m.rmse, rmse(y, p));
	EXPECT_EQ(m.rmsse, rmsse(train, y, p));
	EXPECT_EQ(m.mape, mape(y, p));
	EXPECT_EQ(m.smape, smape(y, p));
	EXPECT_EQ(m.r2, r2(y, p));
	EXPECT_EQ(m.bias, bias(y, p));
}
