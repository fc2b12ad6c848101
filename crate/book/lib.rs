// mdbook cannot run the listings itself, so every chapter is pulled in as
// the docs of an empty module and `cargo test --doc` runs the code blocks.

#[doc = include_str!("src/intro.md")]
pub mod intro {}
#[doc = include_str!("src/semirings.md")]
pub mod semirings {}
#[doc = include_str!("src/words.md")]
pub mod words {}
#[doc = include_str!("src/identities.md")]
pub mod identities {}
#[doc = include_str!("src/hypergraphs.md")]
pub mod hypergraphs {}
#[doc = include_str!("src/hypergraph_semirings.md")]
pub mod hypergraph_semirings {}
#[doc = include_str!("src/groups.md")]
pub mod groups {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
