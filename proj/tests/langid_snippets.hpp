#pragma once
// Hand-labeled calibration set for the language classifier: 34 English,
// 33 Chinese, 33 junk snippets. Frozen before the classifier was written;
// the classifier is tuned until this whole set is classified correctly at
// the 0.9 confidence threshold, never the other way around.

#include <string_view>

namespace langid_oracle {

struct Snippet {
    std::string_view text;
    std::string_view label;  // "en", "zh", "junk"
};

inline constexpr Snippet kSnippets[] = {
    // ---- English (34) ----
    {"The city council voted on Tuesday to extend the bus line past the old mill district, a change that residents have been requesting for more than a decade.", "en"},
    {"She packed the last of the books into a cardboard box and looked around the empty apartment one more time before handing over the keys.", "en"},
    {"Scientists at the university announced that the new telescope had captured its first images of a distant galaxy cluster, and the data will be public next year.", "en"},
    {"If you want the bread to rise properly, you have to let the dough rest in a warm place for at least an hour before you put it in the oven.", "en"},
    {"The quarterly report shows that revenue grew by eight percent, although the company warned that shipping costs would remain high through the winter.", "en"},
    {"He had never seen the ocean before, and when the road finally curved along the cliffs he pulled over and just sat there watching the waves.", "en"},
    {"Voters in three districts will decide next month whether to fund the construction of a new public library near the riverfront park.", "en"},
    {"The recipe calls for two cups of flour, a pinch of salt, and whatever berries you happen to have left over from the weekend market.", "en"},
    {"After the storm passed, the neighbors came out one by one to clear the branches from the road and check on the older residents at the end of the street.", "en"},
    {"The museum's new exhibit traces the history of printing from carved wooden blocks to the machines that filled newsrooms in the last century.", "en"},
    {"I told him that the meeting had been moved to Thursday, but he showed up on Wednesday anyway with all of his charts printed and bound.", "en"},
    {"The trail climbs gently for the first two miles and then turns steep near the ridge, so bring more water than you think you will need.", "en"},
    {"Her latest novel follows three generations of a fishing family as the harbor around them slowly turns into a tourist town.", "en"},
    {"The committee spent most of the evening arguing about the budget for the spring festival and never got to the question of parking.", "en"},
    {"When the train finally arrived, it was so crowded that we decided to wait for the next one and get coffee from the stand on the platform.", "en"},
    {"The company said it would recall the affected batteries after several customers reported that their devices were overheating during charging.", "en"},
    {"On clear nights you can see the lights of the valley towns from the observatory deck, which stays open until midnight in the summer.", "en"},
    {"The teacher asked each student to bring one object from home that told a story about their family, and the results filled two long tables.", "en"},
    {"Heavy rain is expected across the northern counties tonight, and drivers are being warned about flooding on the low road by the river.", "en"},
    {"It took the crew three days to repair the bridge, and during that time the ferry ran every hour from the old landing below the church.", "en"},
    {"The garden looked abandoned at first, but under the weeds we found neat rows of stones marking where the beds used to be.", "en"},
    {"Analysts expect the central bank to hold rates steady this quarter, though several board members have hinted at a cut before the end of the year.", "en"},
    {"My grandmother kept every letter she ever received in a shoebox under the bed, and reading them now feels like walking through another country.", "en"},
    {"The referee stopped the match twice in the second half because fans kept throwing paper planes onto the field from the upper stands.", "en"},
    {"To install the shelf, first mark the wall where the brackets will go, then check the marks with a level before you drill anything.", "en"},
    {"The documentary follows a small theater company as they rehearse a play that none of them believe will ever open on time.", "en"},
    {"Local farmers say the late frost damaged the apple blossoms, and they expect the harvest to be the smallest one in nearly twenty years.", "en"},
    {"We walked along the canal until the path ended at a locked gate, then doubled back through the market street as the stalls were closing.", "en"},
    {"The new policy requires every department to publish its spending reports online within thirty days of the end of each quarter.", "en"},
    {"He learned to repair watches from his father, who had learned from a man whose shop once stood where the bank parking lot is now.", "en"},
    {"The orchestra opened the evening with a quiet piece that most of the audience had never heard, and you could feel the room lean in to listen.", "en"},
    {"Because the flight was delayed by fog, we missed the connection and spent the night in a hotel by the airport with a view of the runway.", "en"},
    {"The survey found that most commuters would switch to the train if the monthly pass cost less than the price of parking downtown.", "en"},
    {"By the time the firefighters reached the barn, the neighbors had already led the horses out and were hosing down the roof of the house.", "en"},
    // ---- Chinese (33) ----
    {"市政府昨天宣布，地铁三号线将于明年六月通车，沿线共设十二个车站，连接老城区和新开发的工业园区。", "zh"},
    {"她把最后一箱书搬上车，回头看了一眼住了十年的老房子，窗台上的那盆花还留在原地。", "zh"},
    {"研究人员发现，这种新材料在低温条件下仍然能保持良好的导电性能，有望用于下一代电池。", "zh"},
    {"做这道菜的关键是火候，先用大火把油烧热，再转小火慢慢把葱姜的香味煸出来。", "zh"},
    {"公司第三季度的财报显示，营业收入比去年同期增长了百分之十二，但物流成本仍然偏高。", "zh"},
    {"他从小在山里长大，第一次看到大海的时候，在沙滩上站了很久，一句话也没有说。", "zh"},
    {"下个月居民将投票决定是否在河边公园旁边修建一座新的公共图书馆。", "zh"},
    {"这个食谱需要两杯面粉、一小勺盐，还有周末集市上买回来的任何浆果都可以。", "zh"},
    {"台风过境之后，邻居们陆续走出家门，清理路上的树枝，顺便看望街尾的几位老人。", "zh"},
    {"博物馆的新展览介绍了印刷术的历史，从雕版印刷一直讲到上个世纪报社里的铸字机。", "zh"},
    {"我明明告诉过他会议改到了星期四，他还是星期三就来了，手里抱着装订好的一摞图表。", "zh"},
    {"这条步道前两公里比较平缓，接近山脊的地方突然变陡，记得多带一些水。", "zh"},
    {"她的新小说讲述了一个渔民家庭三代人的故事，他们身边的港口慢慢变成了旅游小镇。", "zh"},
    {"委员会整个晚上都在争论春季庙会的预算，停车的问题最后根本没有讨论。", "zh"},
    {"火车进站的时候已经挤满了人，我们决定等下一班，先去站台上的小摊买杯咖啡。", "zh"},
    {"由于多名用户反映设备在充电时发热，厂商表示将召回受影响批次的电池。", "zh"},
    {"天气晴朗的晚上，可以从观景台看到山谷里城镇的灯火，夏天这里开放到午夜。", "zh"},
    {"老师让每个学生从家里带来一件能讲述家族故事的物品，结果摆满了两张长桌。", "zh"},
    {"气象台预计今晚北部各县有大到暴雨，河边低洼路段可能积水，请司机注意绕行。", "zh"},
    {"工程队用了三天时间修复大桥，这期间渡船每小时从教堂下面的老码头出发一班。", "zh"},
    {"院子乍一看已经荒废了，拨开杂草才发现，下面整整齐齐的石头还标着当年花坛的位置。", "zh"},
    {"分析人士预计央行本季度将维持利率不变，不过几位委员暗示年底之前可能降息。", "zh"},
    {"祖母把收到的每一封信都存在床底下的鞋盒里，如今翻看它们，就像走进了另一个国家。", "zh"},
    {"下半场裁判两次中断比赛，因为看台上的球迷不停地往场内扔纸飞机。", "zh"},
    {"安装搁板之前，先在墙上标出支架的位置，再用水平尺核对一遍，然后才能打孔。", "zh"},
    {"这部纪录片跟拍了一个小剧团，他们排练的那出戏，连他们自己都不相信能按时上演。", "zh"},
    {"当地果农说晚霜冻伤了苹果花，今年的收成恐怕是近二十年来最少的一次。", "zh"},
    {"我们沿着运河一直走到一扇上锁的铁门前，只好原路折回，穿过正在收摊的集市街。", "zh"},
    {"新规定要求各部门在每个季度结束后的三十天内，把支出报告公布在网站上。", "zh"},
    {"他跟父亲学会了修理手表，而父亲的手艺来自一位老师傅，老师傅的铺子原来就在如今银行停车场的位置。", "zh"},
    {"音乐会以一首安静的曲子开场，大多数听众都没有听过，整个大厅仿佛都屏住了呼吸。", "zh"},
    {"航班因为大雾延误，我们错过了转机，只好在机场旁边的旅馆住了一夜，窗外正对着跑道。", "zh"},
    {"调查显示，如果月票价格低于市中心的停车费，大多数通勤者愿意改乘火车上下班。", "zh"},
        // ---- junk (33): OCR debris, encodings gone wrong, mashed keys, blobs ----
    {"x7Qz jfk2 plRm vv8t qqnB zzp0 krW4 mmx9 ttY2 hhG7 wqJ3 bbN8 ckV5 rrL6", "junk"},
    {"\xd5\xa9\xb3 \xca\xb9 \xc2\xb3\xcc\xb3 \xd5\xba \xc4\xbd \xd5\xa9\xb3 \xca\xb9 \xc2\xb3\xcc\xb3 \xd5\xba \xc4\xbd\xd5\xa9", "junk"},
    {"asdf jkl; qwerty uiop zxcv bnm, asdf jkl; qwerty uiop zxcv bnm asdfgh", "junk"},
    {"TWFueSBoYW5kcyBtYWtlIGxpZ2h0IHdvcmsu QmFzZTY0IGJsb2Jz IGFyZSBub3QgcHJvc2Uu", "junk"},
    {"0x3fa2 0x0040 0xdead 0xbeef 0x1234 0x5678 0x9abc 0xdef0 0x0f0f 0xf0f0", "junk"},
    {"ÀÁÂÃÄÅÆÇÈÉÊËÌÍÎÏÐÑÒÓÔÕÖ×ØÙÚÛÜÝÞßàáâãäåæçèéêëìíîïðñòóôõö÷øùúûüýþÿ", "junk"},
    {"lorem ipsum dolor sit amet consectetur adipiscing elit sed do eiusmod tempor", "junk"},
    {"]]]] [[[[ }}}} {{{{ |||| \\\\ //// ~~~~ ^^^^ &&&& %%%% $$$$ #### @@@@", "junk"},
    {"q w e r t y u i o p a s d f g h j k l z x c v b n m q w e r t y u i o p", "junk"},
    {"Дйшртф их вфыук щ活 столд ышгмх жй премыш 가낪댰 ол視 créfm ушён", "junk"},
    {"mZ8#kP2$vN5@qR9! xT4%wY7&bL1* cJ6( hF3) dG0- sA5_ eK8+ uV2= iQ9/", "junk"},
    {"the the \n\n the \t\t 的的 the \n\n жжжжж \n\n\n the \n the \t the \n the", "junk"},
    {"AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAABBBBBBBBBBBBBBBBBBBBBBBBBBBBBBBB", "junk"},
    {"zxqj vwkp fgyh mntb rlcs dzxq jvwk pfgy hmnt brlc sdzx qjvw kpfg yhmn", "junk"},
    {"01001000 01100101 01101100 01101100 01101111 00100000 01010111 01101111", "junk"},
    {"ÃÂ¢ÃÂÃÂÃÂ¢ÃÂÃÂ ÃÂ¢ÃÂÃÂ mojibake ÃÂ¢ÃÂÃÂ ÃÂ¢ÃÂÃÂÃÂ¢", "junk"},
    {"e8f2a9c417b3d605 9a1c4e7f2b8d3a60 5c9e2f7a4b1d8360 7f3a9c2e5b8d1406", "junk"},
    {"ㅁㄴㅇㄹ ㅂㅈㄷㄱ ㅋㅌㅊㅍ ㅛㅕㅑㅐ ㅁㄴㅇㄹ ㅂㅈㄷㄱ ㅋㅌㅊㅍ ㅛㅕㅑㅐㅁㄴㅇㄹ", "junk"},
    {"ffweiugh weiufhq 3874tr 8browu qowuef 09q2u3 oiasjd lkqwje 128oeu aslkdj", "junk"},
    {"rm -rf ./tmp/*.o && mv a.out b1n_?\?_x; cat /dev/urandom | head -c 99", "junk"},
    {"٣٤٥٦٧٨٩ ٠١٢ ٣٤٥ ٦٧٨٩٠ ١٢٣٤ ٥٦٧٨ ٩٠١٢٣ ٤٥٦٧٨٩ ٠١٢٣٤٥٦٧", "junk"},
    {"wtrphl sgnmdk bcvxzf qjyoea uuiioo ppllkk mmnnbb vvccxx zzaass ddffgg", "junk"},
    {"♠♣♥♦♪♫☼►◄↕‼¶§▬↨↑↓→←∟↔▲▼ ♠♣♥♦♪♫☼►◄↕‼¶§▬↨↑↓→←∟↔▲▼", "junk"},
    {"011235813213455891442333776109871597258441816765109461771128657463687", "junk"},
    {"ghtyu plmko qazwsx edcrfv tgbyhn ujmik olpqa zwsxe dcrfv tgbyh nujmi", "junk"},
    {"t\u0336h\u0335e\u0334 v\u0338o\u0336i\u0335d\u0334 s\u0338t\u0336a\u0335r\u0334e\u0338s\u0336 b\u0335a\u0334c\u0338k\u0336 \u0335\u0334\u0338\u0336\u0335", "junk"},
    {"PK\003\004 JFIF RIFF WAVEfmt GIF89a PNG IHDR IDAT IEND \xff\xd8\xff\xe0", "junk"},
    {"kjhgfdsa poiuytre mnbvcxz qwertyuio asdfghjkl zxcvbnmqw ertyuiopas", "junk"},
    {"一二三 abc 가나다 абв αβγ אבג ابت 一二三 abc 가나다 абв αβγ אבג ابت", "junk"},
    {"%$@!*&^#) (*&^%$#@! ~`+=-_][ }{|\\:;\"'<>,.?/ %$@!*&^#)(*&^ %$#@!~`+=", "junk"},
    {"uryyb jbeyq guvf vf ebg guvegrra abg ernl ratyvfu jbeqf ng nyy urer", "junk"},
    {"ooooooooooooooooooo eeeeeeeeeeeeeeeee aaaaaaaaaaaaaaaaa iiiiiiiiiiiii", "junk"},
    {"\007\007\001\002 bell bell \033[31m \033[0m x \007\007\001\002 \033[2J \033[H \007", "junk"},
};

inline constexpr size_t kSnippetCount = sizeof(kSnippets) / sizeof(kSnippets[0]);

}  // namespace langid_oracle
