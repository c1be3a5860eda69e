pub mod acceptance;
pub mod chaincx;
pub mod cli;
pub mod gtower;
pub mod intlin;
pub mod miltower;
pub mod random;

// The guide's snippets run as doc-tests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intlin.md")]
    mod intlin {}
    #[doc = include_str!("../../../book/src/towers.md")]
    mod towers {}
    #[doc = include_str!("../../../book/src/mittag_leffler.md")]
    mod mittag_leffler {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/witnesses.md")]
    mod witnesses {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
