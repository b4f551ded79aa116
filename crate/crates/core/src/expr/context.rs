use std::collections::BTreeMap;

use super::{name, Expr, ExprError, Name};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolKind {
    Coordinate,
    GroupParameter,
    ConstantParameter,
    /// Arbitrary function with named parameter slots; arity is `params.len()`.
    Function { params: Vec<Name> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    pub name: Name,
    pub kind: SymbolKind,
}

/// Symbol table used by the parser.
///
/// Names are unique; a coordinate may additionally be declared dependent on an
/// ordered list of single-letter variables, which enables jet names such as
/// `u_xt` for it.
#[derive(Debug, Clone, Default)]
pub struct Context {
    symbols: BTreeMap<Name, Symbol>,
    dependents: BTreeMap<Name, Vec<Name>>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn declare(&mut self, sym: &str, kind: SymbolKind) -> Result<(), ExprError> {
        if sym == "D" || sym == "exp" {
            return Err(ExprError::Duplicate(sym.to_string()));
        }
        if let SymbolKind::Function { params } = &kind {
            if params.is_empty() {
                return Err(ExprError::Arity {
                    name: sym.to_string(),
                    expected: 1,
                    found: 0,
                });
            }
        }
        if self.symbols.contains_key(sym) {
            return Err(ExprError::Duplicate(sym.to_string()));
        }
        self.symbols.insert(
            name(sym),
            Symbol {
                name: name(sym),
                kind,
            },
        );
        Ok(())
    }

    pub fn coordinate(mut self, sym: &str) -> Result<Self, ExprError> {
        self.declare(sym, SymbolKind::Coordinate)?;
        Ok(self)
    }

    pub fn group_parameter(mut self, sym: &str) -> Result<Self, ExprError> {
        self.declare(sym, SymbolKind::GroupParameter)?;
        Ok(self)
    }

    pub fn constant(mut self, sym: &str) -> Result<Self, ExprError> {
        self.declare(sym, SymbolKind::ConstantParameter)?;
        Ok(self)
    }

    pub fn function(mut self, sym: &str, params: &[&str]) -> Result<Self, ExprError> {
        self.declare(
            sym,
            SymbolKind::Function {
                params: params.iter().map(|p| name(p)).collect(),
            },
        )?;
        Ok(self)
    }

    /// Marks a declared coordinate as a dependent variable over `vars`.
    pub fn dependent(mut self, dep: &str, vars: &[&str]) -> Result<Self, ExprError> {
        match self.symbols.get(dep).map(|s| &s.kind) {
            Some(SymbolKind::Coordinate) => {}
            _ => return Err(ExprError::UnknownSymbol(dep.to_string())),
        }
        self.dependents
            .insert(name(dep), vars.iter().map(|v| name(v)).collect());
        Ok(self)
    }

    pub fn get(&self, sym: &str) -> Option<&Symbol> {
        self.symbols.get(sym)
    }

    pub fn dependent_vars(&self, dep: &str) -> Option<&[Name]> {
        self.dependents.get(dep).map(Vec::as_slice)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values()
    }

    pub fn parse(&self, text: &str) -> Result<Expr, ExprError> {
        super::parse::parse(self, text)
    }
}
