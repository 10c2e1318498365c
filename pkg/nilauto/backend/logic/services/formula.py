# logic/services/formula.py
"""
1 차 논리식 구문 트리

항(term) 은 변수, 상수($이름), 단어 리터럴, 함수 적용(*, inv, comm, pow) 이다.
desugar() 가 함수 적용을 ∃ 로 묶인 보조 변수와 Op 원자로 펼친 뒤에는
원자의 인자는 모두 변수다.
"""
from dataclasses import dataclass
from itertools import count

from core.exceptions import FormulaError

FRESH_PREFIX = '%'


# 항

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return f"${self.name}"


@dataclass(frozen=True)
class WordLiteral:
    text: str

    def __str__(self):
        return f'"{self.text}"'


@dataclass(frozen=True)
class Apply:
    op: str
    args: tuple
    exponent: int = None

    def __str__(self):
        parts = [self.op] + [str(a) for a in self.args]
        if self.exponent is not None:
            parts.append(str(self.exponent))
        return f"({' '.join(parts)})"


# 식

@dataclass(frozen=True)
class Truth:
    value: bool

    def __str__(self):
        return 'true' if self.value else 'false'


@dataclass(frozen=True)
class Atom:
    relation: str
    args: tuple

    def __str__(self):
        return f"({self.relation} {' '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Equals:
    left: object
    right: object

    def __str__(self):
        return f"(= {self.left} {self.right})"


@dataclass(frozen=True)
class WordIs:
    """변수가 특정 단어와 같음 (단어 리터럴을 펼친 결과)"""
    var: Var
    text: str

    def __str__(self):
        return f'(= {self.var} "{self.text}")'


@dataclass(frozen=True)
class Not:
    body: object

    def __str__(self):
        return f"(not {self.body})"


@dataclass(frozen=True)
class And:
    parts: tuple

    def __str__(self):
        return f"(and {' '.join(str(p) for p in self.parts)})"


@dataclass(frozen=True)
class Or:
    parts: tuple

    def __str__(self):
        return f"(or {' '.join(str(p) for p in self.parts)})"


@dataclass(frozen=True)
class Implies:
    premise: object
    conclusion: object

    def __str__(self):
        return f"(implies {self.premise} {self.conclusion})"


@dataclass(frozen=True)
class Iff:
    left: object
    right: object

    def __str__(self):
        return f"(iff {self.left} {self.right})"


@dataclass(frozen=True)
class Exists:
    variables: tuple
    body: object

    def __str__(self):
        return f"(exists ({' '.join(self.variables)}) {self.body})"


@dataclass(frozen=True)
class ForAll:
    variables: tuple
    body: object

    def __str__(self):
        return f"(forall ({' '.join(self.variables)}) {self.body})"


QUANTIFIERS = (Exists, ForAll)


def _children(node):
    if isinstance(node, (Not,)):
        return (node.body,)
    if isinstance(node, (And, Or)):
        return node.parts
    if isinstance(node, Implies):
        return (node.premise, node.conclusion)
    if isinstance(node, Iff):
        return (node.left, node.right)
    if isinstance(node, QUANTIFIERS):
        return (node.body,)
    return ()


def _term_variables(term):
    if isinstance(term, Var):
        yield term.name
    elif isinstance(term, Apply):
        for arg in term.args:
            yield from _term_variables(arg)


def _atom_variables(node):
    if isinstance(node, Atom):
        for arg in node.args:
            yield from _term_variables(arg)
    elif isinstance(node, Equals):
        yield from _term_variables(node.left)
        yield from _term_variables(node.right)
    elif isinstance(node, WordIs):
        yield node.var.name


def free_variables(node):
    """
    자유 변수를 왼쪽부터 처음 등장한 순서로

    Returns:
        tuple[str]
    """
    order = []

    def visit(n, bound):
        if isinstance(n, QUANTIFIERS):
            visit(n.body, bound | set(n.variables))
            return
        for name in _atom_variables(n):
            if name not in bound and name not in order:
                order.append(name)
        for child in _children(n):
            visit(child, bound)

    visit(node, frozenset())
    return tuple(order)


def bound_variables(node):
    names = set()
    if isinstance(node, QUANTIFIERS):
        names.update(node.variables)
    for child in _children(node):
        names |= bound_variables(child)
    return names


# 항 펼치기

class _Desugarer:
    def __init__(self):
        self.counter = count(1)

    def fresh(self):
        return f"{FRESH_PREFIX}{next(self.counter)}"

    def term(self, term, defs, fresh):
        """항의 값을 담는 변수 이름을 돌려주고 정의 원자를 defs 에 추가"""
        if isinstance(term, Var):
            return term.name
        if isinstance(term, Const):
            name = self._new(fresh)
            defs.append(Atom(f"is_{term.name}", (Var(name),)))
            return name
        if isinstance(term, WordLiteral):
            name = self._new(fresh)
            defs.append(WordIs(Var(name), term.text))
            return name
        if term.op == '*':
            if len(term.args) < 2:
                raise FormulaError("(* ...) needs at least two factors")
            acc = self.term(term.args[0], defs, fresh)
            for arg in term.args[1:]:
                right = self.term(arg, defs, fresh)
                out = self._new(fresh)
                defs.append(_op(acc, right, out))
                acc = out
            return acc
        if term.op == 'inv':
            value = self.term(_single(term), defs, fresh)
            e, out = self._new(fresh), self._new(fresh)
            defs += [Atom('is_e', (Var(e),)), _op(value, out, e)]
            return out
        if term.op == 'comm':
            if len(term.args) != 2:
                raise FormulaError("(comm s t) takes two terms")
            s = self.term(term.args[0], defs, fresh)
            t = self.term(term.args[1], defs, fresh)
            st, ts, out = self._new(fresh), self._new(fresh), self._new(fresh)
            # s·t = t·s·[s,t]
            defs += [_op(s, t, st), _op(t, s, ts), _op(ts, out, st)]
            return out
        if term.op == 'pow':
            n = term.exponent
            base = _single(term)
            if n < 0:
                base, n = Apply('inv', (base,)), -n
            if n == 0:
                out = self._new(fresh)
                defs.append(Atom('is_e', (Var(out),)))
                return out
            value = self.term(base, defs, fresh)
            acc = value
            for _ in range(n - 1):
                out = self._new(fresh)
                defs.append(_op(acc, value, out))
                acc = out
            return acc
        raise FormulaError(f"unknown function symbol {term.op!r}")

    def _new(self, fresh):
        name = self.fresh()
        fresh.append(name)
        return name

    def atom(self, node):
        defs, fresh = [], []
        if isinstance(node, Atom):
            core = Atom(node.relation, tuple(Var(self.term(a, defs, fresh)) for a in node.args))
        else:
            core = Equals(Var(self.term(node.left, defs, fresh)), Var(self.term(node.right, defs, fresh)))
        if not fresh:
            return core
        return Exists(tuple(fresh), And(tuple(defs) + (core,)))

    def formula(self, node):
        if isinstance(node, (Atom, Equals)):
            return self.atom(node)
        if isinstance(node, (Truth, WordIs)):
            return node
        if isinstance(node, Not):
            return Not(self.formula(node.body))
        if isinstance(node, And):
            return And(tuple(self.formula(p) for p in node.parts))
        if isinstance(node, Or):
            return Or(tuple(self.formula(p) for p in node.parts))
        if isinstance(node, Implies):
            return Implies(self.formula(node.premise), self.formula(node.conclusion))
        if isinstance(node, Iff):
            return Iff(self.formula(node.left), self.formula(node.right))
        if isinstance(node, QUANTIFIERS):
            return type(node)(node.variables, self.formula(node.body))
        raise FormulaError(f"not a formula: {node!r}")


def _op(x, y, z):
    return Atom('Op', (Var(x), Var(y), Var(z)))


def _single(term):
    if len(term.args) != 1:
        raise FormulaError(f"({term.op} ...) takes one term")
    return term.args[0]


def desugar(node):
    """함수 적용·상수·단어 리터럴을 ∃ 보조 변수로 펼친다"""
    return _Desugarer().formula(node)


# 속박 변수 이름 정리

def rename_bound(node, free=()):
    """
    모든 속박 변수에 서로 다른 이름을 준다

    Raises:
        FormulaError: 같은 이름이 자유 변수와 속박 변수로 함께 쓰이거나 한 블록에 중복
    """
    free = set(free) | set(free_variables(node))
    clash = sorted(free & bound_variables(node))
    if clash:
        raise FormulaError(f"variable(s) {', '.join(clash)} occur both free and bound")
    used = set(free)

    def visit(n, env):
        if isinstance(n, QUANTIFIERS):
            if len(set(n.variables)) != len(n.variables):
                raise FormulaError(f"repeated variable in quantifier block {n.variables}")
            env = dict(env)
            names = []
            for name in n.variables:
                new, k = name, 1
                while new in used:
                    new, k = f"{name}#{k}", k + 1
                used.add(new)
                env[name] = new
                names.append(new)
            return type(n)(tuple(names), visit(n.body, env))
        if isinstance(n, Atom):
            return Atom(n.relation, tuple(Var(env.get(a.name, a.name)) for a in n.args))
        if isinstance(n, Equals):
            return Equals(Var(env.get(n.left.name, n.left.name)), Var(env.get(n.right.name, n.right.name)))
        if isinstance(n, WordIs):
            return WordIs(Var(env.get(n.var.name, n.var.name)), n.text)
        if isinstance(n, Not):
            return Not(visit(n.body, env))
        if isinstance(n, (And, Or)):
            return type(n)(tuple(visit(p, env) for p in n.parts))
        if isinstance(n, Implies):
            return Implies(visit(n.premise, env), visit(n.conclusion, env))
        if isinstance(n, Iff):
            return Iff(visit(n.left, env), visit(n.right, env))
        return n

    return visit(node, {})


# 부정 밀어 넣기

def normalize(node):
    """
    →, ↔, ∀ 를 없애고 부정을 ∧/∨ 안쪽으로 민다 (¬∃ 는 남긴다)
    """
    if isinstance(node, Implies):
        return normalize(Or((Not(node.premise), node.conclusion)))
    if isinstance(node, Iff):
        a, b = node.left, node.right
        return normalize(Or((And((a, b)), And((Not(a), Not(b))))))
    if isinstance(node, ForAll):
        return Not(Exists(node.variables, normalize(Not(node.body))))
    if isinstance(node, Exists):
        return Exists(node.variables, normalize(node.body))
    if isinstance(node, (And, Or)):
        parts = []
        for part in (normalize(p) for p in node.parts):
            # 같은 연결사는 평탄화
            parts.extend(part.parts if type(part) is type(node) else (part,))
        return type(node)(tuple(parts))
    if isinstance(node, Not):
        return _negate(node.body)
    return node


def _negate(body):
    if isinstance(body, Not):
        return normalize(body.body)
    if isinstance(body, Truth):
        return Truth(not body.value)
    if isinstance(body, And):
        return normalize(Or(tuple(Not(p) for p in body.parts)))
    if isinstance(body, Or):
        return normalize(And(tuple(Not(p) for p in body.parts)))
    if isinstance(body, Implies):
        return normalize(And((body.premise, Not(body.conclusion))))
    if isinstance(body, ForAll):
        return Exists(body.variables, normalize(Not(body.body)))
    inner = normalize(body)
    if isinstance(inner, (Not, Truth, And, Or)):
        return _negate(inner)
    return Not(inner)


def prepare(node, free=()):
    """컴파일 전처리: 펼치기, 이름 정리, 정규화"""
    return normalize(rename_bound(desugar(node), free))
