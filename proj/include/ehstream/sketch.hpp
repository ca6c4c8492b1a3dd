/**
 * @file sketch.hpp
 *
 * Sliding-window Exponential Histogram sketches.
 */

#ifndef EHSTREAM_SKETCH_HPP_
#define EHSTREAM_SKETCH_HPP_

#include "ehstream/sketch/bit_count_eh.hpp"
#include "ehstream/sketch/bucket.hpp"
#include "ehstream/sketch/int_mean_eh.hpp"
#include "ehstream/sketch/int_sum_eh.hpp"
#include "ehstream/sketch/variance_eh.hpp"
#include "ehstream/sketch/window_estimate.hpp"

#endif // EHSTREAM_SKETCH_HPP_
