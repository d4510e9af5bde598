// Exercises the shared-library surface in srsense.h.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "srsense.h"

TEST_CASE("version and status names") {
    CHECK(std::string(srs_version()).find("srsense") != std::string::npos);
    CHECK(std::string(srs_status_name(SRS_OK)) == "ok");
    CHECK(std::string(srs_status_name(SRS_ERR_CONFIG)) == "config error");
}

TEST_CASE("double-well diagnostics") {
    CHECK(srs_potential(1.0, 1.0, 1.0) == doctest::Approx(-0.25));
    CHECK(srs_potential(0.0, 1.0, 1.0) == 0.0);

    double xm = 0, xp = 0, xb = 1;
    REQUIRE(srs_stable_points(1.0, 1.0, &xm, &xp, &xb) == SRS_OK);
    CHECK(xm == doctest::Approx(-1.0));
    CHECK(xp == doctest::Approx(1.0));
    CHECK(xb == 0.0);
    CHECK(srs_stable_points(-1.0, 1.0, &xm, &xp, &xb) == SRS_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(srs_last_error()) > 0);

    double dv = 0;
    REQUIRE(srs_barrier_height(1.0, 1.0, &dv) == SRS_OK);
    CHECK(dv == doctest::Approx(0.25));

    double rate = 0;
    REQUIRE(srs_kramers_rate(1.0, 1.0, 0.43, &rate) == SRS_OK);
    CHECK(rate == doctest::Approx(0.12584568750073769).epsilon(1e-12));
    CHECK(srs_kramers_rate(1.0, 1.0, 0.0, &rate) == SRS_ERR_INVALID_ARGUMENT);

    double snr = 0;
    REQUIRE(srs_input_snr_db(0.3, 4.5, &snr) == SRS_OK);
    CHECK(snr == doctest::Approx(-20.0));
    CHECK(srs_input_snr_db(0.3, 0.0, &snr) == SRS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("sr filter over a zero drive stays at the stable point") {
    const std::vector<double> input(300, 0.0);
    std::vector<double> output(300 - 40);
    REQUIRE(srs_sr_filter(input.data(), input.size(), 1.0, 1.0, 0.05, 10, 0.0,
                          NAN, 40, 7, output.data()) == SRS_OK);
    for (double v : output)
        CHECK(v == doctest::Approx(1.0));
    // divergence reports a runtime error
    std::vector<double> big(10, 1e9);
    CHECK(srs_sr_filter(big.data(), big.size(), 1.0, 1.0, 0.05, 10, 0.0, NAN, 0, 7,
                        output.data()) == SRS_ERR_RUNTIME);
    CHECK(srs_sr_filter(nullptr, 10, 1.0, 1.0, 0.05, 10, 0.0, NAN, 0, 7,
                        output.data()) == SRS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("periodogram through the C surface") {
    std::vector<double> block(256, 0.0);
    for (std::size_t k = 0; k < block.size(); ++k)
        block[k] = std::sin(2.0 * M_PI * 16.0 * k / 256.0);
    std::vector<double> power(129);
    REQUIRE(srs_periodogram(block.data(), block.size(), 1000.0, power.data()) == SRS_OK);
    CHECK(power[16] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(srs_periodogram(block.data(), 200, 1000.0, power.data()) ==
          SRS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("config handles") {
    srs_config* cfg = nullptr;
    REQUIRE(srs_config_create(&cfg) == SRS_OK);
    REQUIRE(srs_config_set(cfg, "kind", "roc") == SRS_OK);
    REQUIRE(srs_config_set(cfg, "trials", "30") == SRS_OK);
    CHECK(std::string(srs_config_get(cfg, "kind")) == "roc");
    CHECK(srs_config_get(cfg, "absent") == nullptr);
    srs_config_destroy(cfg);

    srs_config* bad = nullptr;
    CHECK(srs_config_load("/nonexistent/path.cfg", &bad) == SRS_ERR_CONFIG);
    CHECK(std::string(srs_last_error()).find("/nonexistent/path.cfg") !=
          std::string::npos);
    CHECK(srs_config_parse("broken line\n", &bad) == SRS_ERR_CONFIG);

    srs_config* parsed = nullptr;
    REQUIRE(srs_config_parse("kind = psd\ntrials = 1\n", &parsed) == SRS_OK);
    CHECK(std::string(srs_config_get(parsed, "trials")) == "1");
    srs_config_destroy(parsed);
}

TEST_CASE("running an experiment end to end") {
    srs_config* cfg = nullptr;
    REQUIRE(srs_config_parse(
                "kind = roc\nseed = 11\ntrials = 40\nsnr_db = -20\npfa_points = 4\n",
                &cfg) == SRS_OK);

    srs_result* a = nullptr;
    REQUIRE(srs_run(cfg, 1, &a) == SRS_OK);
    REQUIRE(a != nullptr);
    CHECK(srs_result_rows(a) == 2 * 4);
    const std::string csv_a = srs_result_csv(a);
    CHECK(csv_a.find("detector,snr_db,pfa,pd,trials,se_pd") != std::string::npos);

    // thread-count independence through the C surface
    srs_result* b = nullptr;
    REQUIRE(srs_run(cfg, 2, &b) == SRS_OK);
    CHECK(csv_a == srs_result_csv(b));
    srs_result_destroy(a);
    srs_result_destroy(b);

    // unknown kind comes back as a config error
    REQUIRE(srs_config_set(cfg, "kind", "bogus") == SRS_OK);
    srs_result* c = nullptr;
    CHECK(srs_run(cfg, 1, &c) == SRS_ERR_CONFIG);
    CHECK(srs_run(nullptr, 1, &c) == SRS_ERR_INVALID_ARGUMENT);
    srs_config_destroy(cfg);
}
