"""Regenerates the toy session-search dataset (deterministic)."""
import random
from pathlib import Path

rng = random.Random(7)
here = Path(__file__).parent

topics = {
    "赛尔号": ["赛尔号", "精灵", "攻略", "游戏", "4399", "进化", "技能", "星球"],
    "微信": ["微信", "聊天", "朋友圈", "支付", "下载", "版本", "腾讯", "通讯"],
    "天气": ["天气", "预报", "北京", "气温", "降雨", "空气", "质量", "明天"],
    "电影": ["电影", "上映", "票房", "导演", "主演", "预告片", "影评", "院线"],
    "足球": ["足球", "比赛", "联赛", "进球", "直播", "球队", "转会", "积分"],
}
filler = ["的", "是", "在", "和", "了", "我们", "可以", "一个", "网站", "首页", "更多", "推荐"]
junk = [
    "404 Not Found 404 Not Found nginx",
    "<unk>",
    "搜到搜索结果",
    "您访问的页面不存在 抱歉 您访问的页面不存在 网页地址可能有误",
    "403 Forbidden 403 Forbidden nginx",
]

docs = {}
doc_topic = {}
next_id = 1000


def new_doc(topic, quality):
    global next_id
    did = f"d{next_id}"
    next_id += 1
    words = topics[topic]
    n = rng.randint(12, 40)
    toks = []
    for _ in range(n):
        if rng.random() < quality:
            toks.append(rng.choice(words))
        else:
            toks.append(rng.choice(filler + rng.choice(list(topics.values()))))
    docs[did] = " ".join(toks)
    doc_topic[did] = topic
    return did


for topic in topics:
    for q in (0.6, 0.45, 0.3, 0.2, 0.1, 0.05):
        for _ in range(2):
            new_doc(topic, q)
junk_ids = []
for text in junk:
    did = f"d{next_id}"
    next_id += 1
    docs[did] = text
    junk_ids.append(did)

sessions = []
sid = 100
for topic in topics:
    for _ in range(3):
        sid += 1
        t = 1427845000.0 + sid * 1000
        turns = []
        for turn in range(rng.randint(2, 3)):
            words = topics[topic]
            query = " ".join(rng.sample(words[:5], rng.randint(1, 2)))
            own = [d for d in docs if doc_topic.get(d) == topic]
            other = [d for d in docs if doc_topic.get(d) not in (None, topic)]
            serp = rng.sample(own, 6) + rng.sample(other, 3) + [rng.choice(junk_ids)]
            rng.shuffle(serp)
            overlap = {d: sum(docs[d].split().count(w) for w in query.split()) for d in serp}
            best = max(serp, key=lambda d: (overlap[d], d))
            t += rng.uniform(5, 60)
            issue = t
            lines = []
            for rank, d in enumerate(serp, 1):
                clicked = d == best or (overlap[d] > 2 and rng.random() < 0.3)
                title = "_".join(docs[d].split()[:3]).replace("<", "").replace(">", "") or "无标题"
                ct = f"{t + rng.uniform(1, 30):.3f}" if clicked else "-1"
                lines.append(f"{rank} http://example.com/{d}.htm {d} {title} {1 if clicked else 0} {ct}")
            t += 60
            turns.append((query, f"q{sid}{turn}", f"{issue:.2f}", lines))
        sessions.append((str(sid), turns))

with open(here / "corpus.tsv", "w", encoding="utf-8") as f:
    for did in sorted(docs):
        f.write(f"{did}\t{docs[did]}\n")
with open(here / "sessions.log", "w", encoding="utf-8") as f:
    for sid, turns in sessions:
        f.write(f"SessionID {sid}\n")
        for query, qid, issue, lines in turns:
            f.write("-----\n")
            f.write(f"{query} {qid} {issue}\n")
            for l in lines:
                f.write(l + "\n")
