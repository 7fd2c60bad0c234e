#include <gtest/gtest.h>

#include <sstream>

#include "rowsim/errors.hpp"
#include "rowsim/trace_io.hpp"

using namespace rowsim;

TEST(TraceCsv, HeaderWithoutWeights)
{
    EXPECT_EQ(trace_csv_header(false, 40), "t_ms,i_syn_nA,i_target_nA,i_ca_nA,learn,membrane_V,post_spike");
}

TEST(TraceCsv, HeaderWithWeights)
{
    EXPECT_EQ(trace_csv_header(true, 3),
              "t_ms,i_syn_nA,i_target_nA,i_ca_nA,learn,membrane_V,post_spike,v_w_0,v_w_1,v_w_2");
}

TEST(TraceCsv, NumberFormat)
{
    EXPECT_EQ(format_csv_number(0.0), "0");
    EXPECT_EQ(format_csv_number(1.5), "1.5");
    EXPECT_EQ(format_csv_number(1.0 / 3.0), "0.333333333");
    EXPECT_EQ(format_csv_number(12345.0), "12345");
}

TEST(TraceCsv, WriteExactRows)
{
    Trace t;
    t.has_weights = true;
    t.n_synapses = 2;
    t.rows.push_back({0.0, 0.0, 0.0, 0.0, false, 0.0, false, {0.0, 0.9}});
    t.rows.push_back({1.0, 0.25, 1.5, 0.0125, true, 0.5, true, {1.8, 0.9}});
    std::ostringstream out;
    write_trace_csv(out, t);
    EXPECT_EQ(out.str(), "t_ms,i_syn_nA,i_target_nA,i_ca_nA,learn,membrane_V,post_spike,v_w_0,v_w_1\n"
                         "0,0,0,0,0,0,0,0,0.9\n"
                         "1,0.25,1.5,0.0125,1,0.5,1,1.8,0.9\n");
}

TEST(TraceCsv, RoundTripPreservesRowsToPrintedPrecision)
{
    Trace t;
    t.rows.push_back({2.0, 0.123456789, 1.0, 0.5, true, 0.75, false, {}});
    std::stringstream io;
    write_trace_csv(io, t);
    const auto back = read_trace_csv(io);
    ASSERT_EQ(back.rows.size(), 1u);
    EXPECT_EQ(back.rows[0], t.rows[0]);
    EXPECT_FALSE(back.has_weights);
}

TEST(TraceCsv, RejectsWrongHeader)
{
    std::istringstream in("t,i_syn\n0,0\n");
    EXPECT_THROW(read_trace_csv(in), ConfigError);
}

TEST(TraceCsv, RejectsRaggedRow)
{
    std::istringstream in("t_ms,i_syn_nA,i_target_nA,i_ca_nA,learn,membrane_V,post_spike\n0,0,0\n");
    EXPECT_THROW(read_trace_csv(in), ConfigError);
}

TEST(TraceCsv, UnwritablePathIsIoError)
{
    EXPECT_THROW(write_trace_csv(std::filesystem::path("/nonexistent/dir/trace.csv"), Trace{}), IoError);
    EXPECT_THROW(read_trace_csv(std::filesystem::path("/nonexistent/dir/trace.csv")), IoError);
}
