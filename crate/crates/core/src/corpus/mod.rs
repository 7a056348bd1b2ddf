//! Tokenization, the inverted index and its statistics, persistence, and
//! extraction of distribution samples from an index or a query log.

mod extract;
mod index;
mod io;
mod persist;
mod tokenize;

pub use extract::{extract_distribution, normalize_query, DistributionSource, Property};
pub use index::{build_index, CorpusStats, InvertedIndex, Posting, TermEntry, TermStats};
pub use io::{read_counts, read_documents, read_queries, read_values, QueryRecord};
pub use persist::{load_index, read_index, save_index, write_index, FORMAT_VERSION, MAGIC};
pub use tokenize::{tokenize, TokenizerConfig};
