#pragma once

#include "orbstream/descriptor.hpp"
#include "orbstream/extractor.hpp"
#include "orbstream/fast.hpp"
#include "orbstream/image.hpp"
#include "orbstream/orientation.hpp"
#include "orbstream/streaming.hpp"
#include "orbstream/types.hpp"
