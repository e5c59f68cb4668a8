//! Guide chapters compiled as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub struct Introduction;

#[doc = include_str!("../../../book/src/quivers.md")]
pub struct Quivers;

#[doc = include_str!("../../../book/src/seeds.md")]
pub struct Seeds;

#[doc = include_str!("../../../book/src/classes.md")]
pub struct Classes;

#[doc = include_str!("../../../book/src/knitting.md")]
pub struct Knitting;

#[doc = include_str!("../../../book/src/y-seeds.md")]
pub struct YSeeds;

#[doc = include_str!("../../../book/src/periodicity.md")]
pub struct Periodicity;

#[doc = include_str!("../../../book/src/caldero-chapoton.md")]
pub struct CalderoChapoton;

#[doc = include_str!("../../../book/src/tools.md")]
pub struct Tools;
