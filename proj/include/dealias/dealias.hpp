#pragma once

#include "dealias/chain.hpp"
#include "dealias/edge_detector.hpp"
#include "dealias/edge_refiner.hpp"
#include "dealias/fft.hpp"
#include "dealias/fragmenter.hpp"
#include "dealias/image.hpp"
#include "dealias/image_io.hpp"
#include "dealias/metrics.hpp"
#include "dealias/pipeline.hpp"
#include "dealias/spectral_filter.hpp"
#include "dealias/synthetic.hpp"
#include "dealias/upsample.hpp"
