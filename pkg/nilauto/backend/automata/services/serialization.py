# automata/services/serialization.py
import orjson
import numpy as np

from core.exceptions import InputError
from .alphabet import Alphabet
from .dfa import Dfa, canonical

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE


def _sink_of(dfa):
    """모든 기호에 대해 자기 자신으로 가는 거부 상태 (없으면 None)"""
    loops = (dfa.delta == np.arange(dfa.state_count)[:, None]).all(axis=1) & ~dfa.accepting
    found = np.flatnonzero(loops)
    return int(found[0]) if found.size else None


def dfa_to_dict(dfa, compact=True):
    """
    DFA 를 JSON 오토마타 형식의 dict 로 변환

    상태 번호는 BFS 정규 번호를 쓰므로 같은 언어의 최소 DFA 는 같은 출력을 낸다.
    compact 이면 싱크로 가는 전이는 생략하고 "sink" 키에 기록한다.

    Args:
        dfa (Dfa): 오토마타
        compact (bool): 싱크 전이 생략 여부

    Returns:
        dict: {"alphabet", "labels", "states", "start", "accepting", "transitions"[, "sink"]}
    """
    dfa = canonical(dfa)
    data = dfa.alphabet.to_dict()
    sink = _sink_of(dfa) if compact else None
    states, symbols = np.indices(dfa.delta.shape).reshape(2, -1)
    targets = dfa.delta.ravel()
    keep = targets != sink if sink is not None else np.ones(targets.shape, dtype=bool)
    triples = np.column_stack([states[keep], symbols[keep], targets[keep]])
    data.update({
        'states': dfa.state_count,
        'start': dfa.start,
        'accepting': sorted(dfa.accepting_states),
        'transitions': triples.tolist(),
    })
    if sink is not None:
        data['sink'] = sink
    return data


def dfa_from_dict(data):
    """dfa_to_dict 의 역변환"""
    try:
        alphabet = Alphabet(int(data['alphabet']), data.get('labels'))
        return Dfa.from_transitions(
            alphabet,
            int(data['states']),
            int(data['start']),
            [int(s) for s in data['accepting']],
            [tuple(int(x) for x in t) for t in data['transitions']],
            sink=data.get('sink'),
        )
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed automaton JSON: {e}") from None


def dumps(data):
    return orjson.dumps(data, option=JSON_OPTIONS)


def loads(raw):
    try:
        return orjson.loads(raw)
    except orjson.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from None


def _quote(text):
    return '"{}"'.format(str(text).replace('"', r'\"'))


def to_dot(dfa, symbol_label=None, max_labels=8, name='automaton'):
    """
    Graphviz DOT 텍스트를 줄 단위로 생성

    같은 (출발, 도착) 쌍의 기호들은 한 간선으로 묶고, 너무 많으면 개수만 표시한다.
    """
    dfa = canonical(dfa)
    symbol_label = symbol_label or dfa.alphabet.label
    yield f"digraph {_quote(name)} {{\n"
    yield "  rankdir=LR;\n"
    yield '  __start [shape=point];\n'
    for state in range(dfa.state_count):
        shape = "doublecircle" if dfa.accepting[state] else "circle"
        yield f'  {state} [shape="{shape}"];\n'
    yield f"  __start -> {dfa.start};\n"
    for state in range(dfa.state_count):
        row = dfa.delta[state]
        for target in np.unique(row).tolist():
            symbols = np.flatnonzero(row == target).tolist()
            if len(symbols) > max_labels:
                label = f"{len(symbols)} symbols"
            else:
                label = " ".join(symbol_label(s) for s in symbols)
            yield f"  {state} -> {target} [label={_quote(label)}];\n"
    yield "}\n"
