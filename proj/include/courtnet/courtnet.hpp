#pragma once

#include "courtnet/community.hpp"
#include "courtnet/corpus.hpp"
#include "courtnet/error.hpp"
#include "courtnet/extract.hpp"
#include "courtnet/graph_io.hpp"
#include "courtnet/networks.hpp"
#include "courtnet/pipeline.hpp"
#include "courtnet/ranking.hpp"
#include "courtnet/segmenter.hpp"
#include "courtnet/synth.hpp"
#include "courtnet/text.hpp"
#include "courtnet/textmetrics.hpp"
#include "courtnet/types.hpp"
