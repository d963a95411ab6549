#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>

#include "hypstrip/hypstrip.h"

namespace {

struct SurfaceDeleter {
  void operator()(hs_surface* s) const { hs_surface_free(s); }
};
using Surface = std::unique_ptr<hs_surface, SurfaceDeleter>;

Surface pants(double a, double b, double c) {
  hs_surface* s = nullptr;
  EXPECT_EQ(hs_pants_create(a, b, c, &s), HS_OK) << hs_last_error();
  return Surface(s);
}

}  // namespace

TEST(CApi, StatusNames) {
  EXPECT_STREQ(hs_status_name(HS_OK), "Ok");
  EXPECT_STREQ(hs_status_name(HS_INVALID_ARGUMENT), "InvalidArgument");
  EXPECT_STREQ(hs_status_name(HS_STRIP_NOT_EMBEDDED), "StripNotEmbedded");
  EXPECT_STREQ(hs_status_name(HS_IO_ERROR), "IoError");
  EXPECT_STREQ(hs_status_name(HS_INTERNAL_ERROR), "InternalError");
  EXPECT_STREQ(hs_status_name(static_cast<hs_status>(999)), "Unknown");
  EXPECT_STRNE(hs_version(), "");
}

TEST(CApi, LengthsAndLabel) {
  const Surface s = pants(2, 2.3, 2.7);
  const char* label = nullptr;
  ASSERT_EQ(hs_surface_label(s.get(), &label), HS_OK);
  EXPECT_STREQ(label, "pants(2,2.3,2.7)");
  double l = 0;
  ASSERT_EQ(hs_curve_length(s.get(), "a", &l), HS_OK);
  EXPECT_NEAR(l, 2.0, 1e-12);
  ASSERT_EQ(hs_arc_length(s.get(), "12", &l), HS_OK);
  EXPECT_GT(l, 0.0);
}

TEST(CApi, ErrorsCarryCodeAndMessage) {
  hs_surface* s = nullptr;
  EXPECT_EQ(hs_pants_create(2, -1, 2, &s), HS_NON_POSITIVE_LENGTH);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::strstr(hs_last_error(), "NonPositiveLength"), nullptr) << hs_last_error();
  EXPECT_EQ(hs_pants_create(2, 2, 2, nullptr), HS_INVALID_ARGUMENT);

  const Surface p = pants(2, 2, 2);
  double l = 0;
  EXPECT_EQ(hs_curve_length(p.get(), "axz", &l), HS_UNKNOWN_GENERATOR);
  EXPECT_EQ(hs_arc_length(p.get(), "1/0", &l), HS_INVALID_ARGUMENT);
  // A successful call clears the message.
  EXPECT_EQ(hs_curve_length(p.get(), "b", &l), HS_OK);
  EXPECT_STREQ(hs_last_error(), "");
}

TEST(CApi, PeelAndMetric) {
  const Surface x = pants(2, 2, 2);
  const char* arcs[] = {"12"};
  hs_surface* raw = nullptr;
  ASSERT_EQ(hs_peel(x.get(), arcs, 1, 0.1, 12, &raw), HS_OK) << hs_last_error();
  const Surface y(raw);
  double l1 = 0, l3 = 0;
  ASSERT_EQ(hs_curve_length(y.get(), "a", &l1), HS_OK);
  ASSERT_EQ(hs_curve_length(y.get(), "ab", &l3), HS_OK);
  EXPECT_LT(l1, 2.0 - 1e-3);
  EXPECT_NEAR(l3, 2.0, 1e-6);
  double k = 0, big_k = 0;
  ASSERT_EQ(hs_weak_metric(x.get(), y.get(), 'k', 6, &k), HS_OK);
  ASSERT_EQ(hs_weak_metric(x.get(), y.get(), 'K', 6, &big_k), HS_OK);
  EXPECT_NEAR(k, 0.0, 1e-9);  // the third boundary is not crossed
  EXPECT_GT(big_k, 0.0);
  EXPECT_EQ(hs_weak_metric(x.get(), y.get(), 'q', 6, &k), HS_INVALID_ARGUMENT);
  EXPECT_EQ(hs_peel(x.get(), arcs, 0, 0.1, 12, &raw), HS_INVALID_ARGUMENT);
  EXPECT_EQ(hs_peel(x.get(), arcs, 1, 10.0, 12, &raw), HS_STRIP_NOT_EMBEDDED);
}

TEST(CApi, ConfigAndRun) {
  hs_config* c = nullptr;
  EXPECT_EQ(hs_config_parse("{\"surface\": 1}", &c), HS_CONFIG_ERROR);
  EXPECT_NE(std::strstr(hs_last_error(), "'surface'"), nullptr) << hs_last_error();
  EXPECT_EQ(hs_config_load("/nonexistent/config.json", &c), HS_IO_ERROR);

  ASSERT_EQ(hs_config_parse(R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]}, "samples": 100})", &c), HS_OK);
  const auto dir = std::filesystem::temp_directory_path() / "hypstrip_test_capi";
  std::filesystem::remove_all(dir);
  EXPECT_EQ(hs_config_set_out(c, dir.c_str()), HS_OK);
  EXPECT_EQ(hs_config_set_seed(c, 11), HS_OK);
  EXPECT_EQ(hs_config_set_bound(c, 0), HS_CONFIG_ERROR);
  EXPECT_EQ(hs_config_set_eps(c, -1.0), HS_CONFIG_ERROR);
  int exit_code = -1;
  ASSERT_EQ(hs_run("verify", c, &exit_code), HS_OK) << hs_last_error();
  EXPECT_EQ(exit_code, 0);
  EXPECT_NE(std::strstr(hs_last_report(), "suite lemma: 0 failures"), nullptr) << hs_last_report();
  EXPECT_TRUE(std::filesystem::exists(dir / "verify.json"));
  EXPECT_EQ(hs_run("peel", c, &exit_code), HS_CONFIG_ERROR);  // no arcs
  EXPECT_EQ(exit_code, 1);
  EXPECT_EQ(hs_run("nope", c, &exit_code), HS_CONFIG_ERROR);
  hs_config_free(c);
}
