#!/usr/bin/env python3
"""Writes the demo corpus: a simulated web, scripted completions and a dataset.

Run from the repository root, then record fixtures with

    build/tools/scamscope batch demo/dataset.jsonl --mode record --sim demo/web \
        --fixtures demo/fixtures --scripts demo/scripts --output /tmp/demo_sessions.jsonl
"""

import json
import pathlib
import textwrap

ROOT = pathlib.Path(__file__).resolve().parent


def page(title, body, lang="en", links=()):
    nav = "\n".join(f'    <li><a href="{href}">{text}</a></li>' for href, text in links)
    return textwrap.dedent(f"""\
        <!DOCTYPE html>
        <html lang="{lang}">
        <head><meta charset="utf-8"><title>{title}</title>
        <style>body {{ font-family: sans-serif; }}</style>
        <script>window.dataLayer = window.dataLayer || [];</script>
        </head>
        <body>
        <nav><ul>
        {nav}
        </ul></nav>
        <main>
        {body}
        </main>
        </body>
        </html>
        """)


def whois(domain, created, registrar, privacy=False, country="US"):
    registrant = ("Registrant Organization: Privacy service provided by Withheld for Privacy ehf\n"
                  "Registrant Country: IS\n") if privacy else (
                  f"Registrant Organization: {domain.split('.')[0].replace('-', ' ').title()}\n"
                  f"Registrant Country: {country}\n")
    return (f"Domain Name: {domain.upper()}\nRegistrar: {registrar}\nCreation Date: {created}T00:00:00Z\n"
            f"Registry Expiry Date: {int(created[:4]) + 1}{created[4:]}T00:00:00Z\n{registrant}"
            f"Name Server: NS1.{registrar.split()[0].upper()}.NET\n")


def dns(ip, mx=True, txt=None):
    out = {"A": [ip], "NS": ["ns1.dnshost.net.", "ns2.dnshost.net."],
           "SOA": ["ns1.dnshost.net. hostmaster.dnshost.net. 2024030101 7200 3600 1209600 300"]}
    if mx:
        out["MX"] = ["10 mail.dnshost.net."]
    if txt:
        out["TXT"] = [txt]
    return out


def certs(domain, issuer, dates, start_id):
    return [{"id": start_id + i, "issuer": issuer, "not_before": nb, "not_after": na,
             "names": [domain, "www." + domain]} for i, (nb, na) in enumerate(dates)]


def step(thought, action, action_input):
    return f"Thought: {thought}\nAction: {action}\nAction Input: {action_input}"


def final(obj, thought="I now know the final answer", fence=False):
    body = json.dumps(obj, ensure_ascii=False)
    if fence:
        body = "```json\n" + body + "\n```"
    return f"Thought: {thought}\nFinal Answer: {body}"


SITES = []


def site(**kw):
    SITES.append(kw)


# ---------------------------------------------------------------- shopping

site(url="https://luxe-bag-outlet.shop/", label="scam", type="online_shopping", lang="en",
     html=page("Luxe Bag Outlet - Designer Bags 80% OFF",
               "<h1>Designer Handbags Clearance</h1><p>All designer bags 80% off today only! Free shipping "
               "worldwide.</p><div class='item'><h2>Classic Tote</h2><span>$39.99</span> <s>$420.00</s></div>"
               "<div class='item'><h2>Quilted Shoulder Bag</h2><span>$45.00</span> <s>$510.00</s></div>"
               "<p>Payment: bank transfer only. Offer ends in 02:13:45.</p>",
               links=[("/collections/all", "Shop All"), ("/pages/contact", "Contact")]),
     whois=whois("luxe-bag-outlet.shop", "2024-02-20", "Gname.com Pte. Ltd.", privacy=True),
     dns=dns("203.0.113.10", mx=False), certs=certs("luxe-bag-outlet.shop", "C=US, O=Let's Encrypt, CN=R3",
                                                   [("2024-02-21T00:00:00", "2024-05-21T00:00:00")], 9100),
     search={"luxe-bag-outlet.shop reviews": [
         {"url": "https://scamdetector-reviews.example.org/luxe-bag-outlet", "title": "luxe-bag-outlet.shop review",
          "summary": "Low trust score. The site was registered recently and hides its owner."},
         {"url": "https://forum.shopperhelp.example.org/t/luxe-bag-outlet", "title": "Never received my order",
          "summary": "Paid by bank transfer three weeks ago, no tracking number and no reply to emails."}]},
     script=[step("I should look at the page first.", "Access URL", "https://luxe-bag-outlet.shop/"),
             step("The page loaded. I will read its text.", "Extract Text", "https://luxe-bag-outlet.shop/"),
             step("Prices are 80-90% below retail with a countdown timer. I will check the domain age.",
                  "Retrieve WHOIS", "luxe-bag-outlet.shop"),
             step("The domain is a few weeks old and uses a privacy service. Let me look for reviews.",
                  "Get Search Result", "luxe-bag-outlet.shop reviews"),
             final({"result": True, "scam_type": "fake online shopping website",
                    "reason": "Designer bags at an abnormal price (80% off) with a countdown creating urgency, "
                              "bank transfer as the only payment method, a domain registered weeks ago behind a "
                              "privacy service, and negative reviews reporting non-delivery."})])

site(url="https://sneakerdeals-clearance.store/", label="scam", type="online_shopping", lang="en",
     html=page("Sneaker Deals Clearance",
               "<h1>Final clearance: running shoes from $19</h1><p>Limited stock. 90% discounts on all "
               "brands.</p><ul><li>Air Runner 2024 - $19.90</li><li>Trail Pro GTX - $24.90</li></ul>"
               "<footer>Copyright 2019 Sneaker Deals. All rights reserved.</footer>",
               links=[("/cart", "Cart"), ("https://sneakerdeals-clearance.store/about", "About us")]),
     whois=whois("sneakerdeals-clearance.store", "2024-03-01", "Alibaba Cloud Computing Ltd.", privacy=True),
     dns=dns("198.51.100.23", mx=False), certs=certs("sneakerdeals-clearance.store", "C=US, O=Let's Encrypt, CN=R3",
                                                    [("2024-03-02T00:00:00", "2024-05-31T00:00:00")], 9200),
     x={"sneakerdeals-clearance.store": [
         {"timestamp": "2024-03-10T09:12:00Z", "text": "@shoefan ordered from sneakerdeals-clearance.store, "
                                                       "card got charged twice and no shoes. Scam!"},
         {"timestamp": "2024-03-08T18:40:00Z", "text": "Anyone know if sneakerdeals-clearance.store is legit?"}]},
     script=[step("Start by opening the site.", "Access URL", "https://sneakerdeals-clearance.store/"),
             step("Read the landing page.", "Extract Text", "https://sneakerdeals-clearance.store/"),
             step("Check which pages the site links to.", "Extract Hyperlink", "https://sneakerdeals-clearance.store/"),
             step("Look for posts about the store on X.", "Search X/Twitter", "sneakerdeals-clearance.store"),
             step("Check the registration data.", "Retrieve WHOIS", "sneakerdeals-clearance.store"),
             final({"result": True, "scam_type": "Online Shopping",
                    "reason": "Unrealistic 90% discounts, an outdated copyright year, no company information "
                              "or contact details, a newly registered domain and Twitter posts reporting "
                              "charges without delivery."})])

site(url="https://schnaeppchen-markenmode.de/", label="scam", type="online_shopping", lang="de",
     html=page("Markenmode Schnäppchen - bis zu 85% Rabatt",
               "<h1>Markenjacken zum Tiefstpreis</h1><p>Nur heute: Daunenjacken ab 29,99 €. Kostenloser "
               "Versand.</p><p>Zahlung ausschließlich per Vorkasse.</p><p>Impressum folgt.</p>",
               lang="de", links=[("/impressum", "Impressum"), ("/agb", "AGB")]),
     whois=whois("schnaeppchen-markenmode.de", "2024-02-28", "Key-Systems GmbH", privacy=True, country="DE"),
     dns=dns("192.0.2.44", mx=False), certs=certs("schnaeppchen-markenmode.de", "C=US, O=Let's Encrypt, CN=R3",
                                                 [("2024-02-29T00:00:00", "2024-05-29T00:00:00")], 9300),
     search={"schnaeppchen-markenmode.de erfahrungen": [
         {"url": "https://www.verbraucherschutz-forum.example.de/fakeshops/schnaeppchen-markenmode",
          "title": "Fake-Shop Warnung: schnaeppchen-markenmode.de",
          "summary": "Der Shop steht auf der Fakeshop-Liste. Kein Impressum, Vorkasse, Ware kommt nicht an."}]},
     script=[step("Ich öffne zuerst die Seite.", "Access URL", "https://schnaeppchen-markenmode.de/"),
             step("Text der Startseite lesen.", "Extract Text", "https://schnaeppchen-markenmode.de/"),
             step("Suche nach Erfahrungsberichten.", "Get Search Result", "schnaeppchen-markenmode.de erfahrungen"),
             final({"result": True, "scam_type": "fake shop",
                    "reason": "Abnormal price levels (85% Rabatt), payment only by advance transfer, no "
                              "company information (Impressum missing) and consumer forum reports list the "
                              "domain as a fake shop."}, fence=True)])

site(url="https://northwind-outfitters.com/", label="legitimate", type="online_shopping", lang="en",
     html=page("Northwind Outfitters - Outdoor Clothing",
               "<h1>Outdoor clothing built to last</h1><p>Free shipping on orders over $150. 30-day returns."
               "</p><div class='item'><h2>Waxed Canvas Jacket</h2><span>$248.00</span></div>"
               "<footer><p>Northwind Outfitters Inc., 410 Harbor Street, Portland, OR 97209. Phone "
               "+1-503-555-0142. <a href='/privacy'>Privacy policy</a>. Copyright 2024.</p></footer>",
               links=[("/shop", "Shop"), ("/about", "About"), ("/privacy", "Privacy policy")]),
     whois=whois("northwind-outfitters.com", "2006-04-11", "MarkMonitor Inc."),
     dns=dns("203.0.113.80", txt="v=spf1 include:_spf.mailhost.net ~all"),
     certs=certs("northwind-outfitters.com", "C=US, O=DigiCert Inc, CN=DigiCert TLS RSA SHA256 2020 CA1",
                 [("2024-01-15T00:00:00", "2025-01-15T00:00:00"), ("2023-01-15T00:00:00", "2024-01-15T00:00:00")],
                 9400),
     reddit={"northwind outfitters": {
         "posts": [{"timestamp": "2023-11-02T14:00:00Z", "title": "Northwind jacket after 5 years",
                    "text": "Still going strong, they repaired a zipper for free."}],
         "comments": [{"timestamp": "2023-11-02T16:30:00Z", "text": "Their customer service is great."}]}},
     script=[step("Open the site.", "Access URL", "https://northwind-outfitters.com/"),
             step("Read the page.", "Extract Text", "https://northwind-outfitters.com/"),
             step("Check the domain registration.", "Retrieve WHOIS", "northwind-outfitters.com"),
             step("See what people say on Reddit.", "Search Reddit", "northwind outfitters"),
             final({"result": False, "scam_type": None,
                    "reason": "Normal prices, a physical address, phone number and privacy policy, a domain "
                              "registered since 2006 with a named registrant, and positive Reddit discussion."})])

site(url="https://harbor-books.com/", label="legitimate", type="online_shopping", lang="en",
     html=page("Harbor Books - Independent Bookstore",
               "<h1>Harbor Books</h1><p>An independent bookstore since 1998. Browse staff picks and order "
               "online for pickup.</p><p>Contact: hello@harbor-books.com, +1-207-555-0188, 12 Wharf Road, "
               "Rockland, ME.</p>",
               links=[("/staff-picks", "Staff picks"), ("/events", "Events"), ("/contact", "Contact")]),
     whois=whois("harbor-books.com", "2001-09-03", "Network Solutions, LLC"),
     dns=dns("198.51.100.77"),
     certs=certs("harbor-books.com", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-02-01T00:00:00", "2024-05-01T00:00:00")], 9500),
     script=[step("Open the bookstore site.", "Access URL", "https://harbor-books.com/"),
             step("Read the page.", "Extract Text", "https://harbor-books.com/"),
             step("Check the certificate history.", "Retrieve Certificate", "harbor-books.com"),
             final({"result": False,
                    "reason": "Long-standing independent store with a physical address, email and phone "
                              "number, ordinary prices and a valid TLS certificate."})])

site(url="https://kaufhaus-lindner.de/", label="legitimate", type="online_shopping", lang="de",
     html=page("Kaufhaus Lindner - Online-Shop",
               "<h1>Willkommen bei Kaufhaus Lindner</h1><p>Haushaltswaren und Mode seit 1952.</p>"
               "<p>Impressum: Lindner GmbH, Marktstraße 5, 93047 Regensburg, Telefon 0941 555012, "
               "Handelsregister HRB 1234.</p><a href='/datenschutz'>Datenschutz</a>",
               lang="de", links=[("/impressum", "Impressum"), ("/datenschutz", "Datenschutz")]),
     whois=whois("kaufhaus-lindner.de", "2003-06-17", "DENIC eG", country="DE"),
     dns=dns("192.0.2.150"),
     certs=certs("kaufhaus-lindner.de", "C=BE, O=GlobalSign nv-sa, CN=GlobalSign GCC R3 DV TLS CA 2020",
                 [("2024-01-05T00:00:00", "2025-01-05T00:00:00")], 9600),
     script=[step("Seite öffnen.", "Access URL", "https://kaufhaus-lindner.de/"),
             step("Seitentext lesen.", "Extract Text", "https://kaufhaus-lindner.de/"),
             step("Domaindaten prüfen.", "Retrieve WHOIS", "kaufhaus-lindner.de"),
             final({"result": False, "scam_type": "none",
                    "reason": "Complete company information with physical address and commercial register "
                              "entry, privacy policy present, domain registered in 2003."})])

# ---------------------------------------------------------------- technical support

site(url="https://pc-security-alert-help.com/", label="scam", type="technical_support", lang="en",
     html=page("WARNING! Your computer is infected",
               "<h1>VIRUS DETECTED - Your PC is blocked</h1><p>Error code 0x80070424. Do not restart your "
               "computer. Call the toll-free number 1-888-555-0199 immediately to speak with a certified "
               "technician.</p><script>alert('Your computer has been locked');</script>"),
     whois=whois("pc-security-alert-help.com", "2024-03-05", "NameSilo, LLC", privacy=True),
     dns=dns("198.51.100.200", mx=False),
     certs=[],
     search={"1-888-555-0199": [
         {"url": "https://phonescams.example.org/18885550199", "title": "1-888-555-0199 tech support scam",
          "summary": "Reported 214 times. Callers ask for remote access and gift cards."}]},
     script=[step("Open the page.", "Access URL", "https://pc-security-alert-help.com/"),
             step("Read what it says.", "Extract Text", "https://pc-security-alert-help.com/"),
             step("Search the phone number.", "Get Search Result", "1-888-555-0199"),
             step("Check certificates.", "Retrieve Certificate", "pc-security-alert-help.com"),
             final({"result": True, "scam_type": "tech support scam",
                    "reason": "Fake virus alert using psychological pressure and urgency, a toll-free number "
                              "reported in many complaints, no certificate history and a domain registered "
                              "days ago."})])

site(url="https://windows-defender-support-center.net/", label="scam", type="technical_support", lang="en",
     html=page("Defender Support Center",
               "<h1>Security Alert</h1><p>Suspicious activity detected: Trojan spyware. Your personal data "
               "is at risk. Contact support: +1-877-555-0123.</p>"),
     whois=whois("windows-defender-support-center.net", "2024-02-27", "PDR Ltd. d/b/a PublicDomainRegistry.com",
                 privacy=True),
     dns=dns("203.0.113.201", mx=False),
     certs=certs("windows-defender-support-center.net", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-02-28T00:00:00", "2024-05-28T00:00:00")], 9700),
     script=[step("Open the page.", "Access URL", "https://windows-defender-support-center.net/"),
             "This looks like a security warning page; I want to see more.",
             step("Read the text.", "Extract Text", "https://windows-defender-support-center.net/"),
             step("Check the domain.", "Retrieve WHOIS", "windows-defender-support-center.net"),
             final({"result": True, "scam_type": "Technical Support",
                    "reason": "Impersonates a security product with a fake alert and phone number, uses "
                              "urgency, and the domain was registered last month behind a privacy service."})])

site(url="https://pc-anzen-support.jp/", label="scam", type="technical_support", lang="ja",
     html=page("セキュリティ警告",
               "<h1>お使いのパソコンはウイルスに感染しています</h1><p>今すぐサポートセンター 0120-555-019 "
               "にお電話ください。電話を切らずに遠隔操作の指示に従ってください。</p>", lang="ja"),
     whois=whois("pc-anzen-support.jp", "2024-03-03", "GMO Internet Group, Inc.", privacy=True, country="JP"),
     dns=dns("192.0.2.99", mx=False),
     certs=[],
     x={"0120-555-019": [{"timestamp": "2024-03-09T01:00:00Z",
                           "text": "0120-555-019 の偽警告に注意。遠隔操作ソフトを入れさせようとしてくる。"}]},
     script=[step("ページを開く。", "Access URL", "https://pc-anzen-support.jp/"),
             step("本文を確認する。", "Extract Text", "https://pc-anzen-support.jp/"),
             step("電話番号の評判を調べる。", "Search X/Twitter", "0120-555-019"),
             final({"result": True, "scam_type": "technical support",
                    "reason": "Fake virus warning demanding a phone call and remote access, reported on "
                              "Twitter as a scam tactic; no TLS certificate history."})])

site(url="https://fixit-computer-repair.com/", label="legitimate", type="technical_support", lang="en",
     html=page("FixIt Computer Repair - Springfield",
               "<h1>Computer repair you can trust</h1><p>Walk-in repairs Monday to Saturday. Transparent "
               "pricing: diagnostics $49.</p><p>1200 Main St, Springfield, IL. Phone (217) 555-0110. "
               "<a href='/privacy'>Privacy policy</a></p>",
               links=[("/services", "Services"), ("/reviews", "Reviews")]),
     whois=whois("fixit-computer-repair.com", "2011-08-22", "GoDaddy.com, LLC"),
     dns=dns("198.51.100.120"),
     certs=certs("fixit-computer-repair.com", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-02-10T00:00:00", "2024-05-10T00:00:00"), ("2023-11-10T00:00:00", "2024-02-08T00:00:00")],
                 9800),
     search={"fixit computer repair springfield": [
         {"url": "https://localreviews.example.com/fixit-springfield", "title": "FixIt Computer Repair - 4.8 stars",
          "summary": "Fast and honest service, fair prices."}]},
     script=[step("Open the site.", "Access URL", "https://fixit-computer-repair.com/"),
             step("Read it.", "Extract Text", "https://fixit-computer-repair.com/"),
             step("Find reviews.", "Get Search Result", "fixit computer repair springfield"),
             step("Check the domain.", "Retrieve WHOIS", "fixit-computer-repair.com"),
             final({"result": False, "scam_type": None,
                    "reason": "A local repair shop with a physical address, phone number, ordinary prices, "
                              "positive review sites and a domain registered in 2011."})])

site(url="https://brightdesk-helpcenter.com/", label="legitimate", type="technical_support", lang="en",
     html=page("BrightDesk Help Center",
               "<h1>BrightDesk Help Center</h1><p>Search our knowledge base or open a ticket. Support "
               "is available through your account dashboard; we never ask you to call a number from a "
               "pop-up.</p><footer>BrightDesk Software Ltd. Copyright 2024.</footer>",
               links=[("/kb", "Knowledge base"), ("/status", "System status")]),
     whois=whois("brightdesk-helpcenter.com", "2014-05-30", "Gandi SAS", country="GB"),
     dns=dns("203.0.113.140", txt="v=spf1 include:mailgun.org ~all"),
     certs=certs("brightdesk-helpcenter.com", "C=US, O=Amazon, CN=Amazon RSA 2048 M02",
                 [("2023-12-01T00:00:00", "2024-12-30T00:00:00")], 9900),
     script=[step("Open the help center.", "Access URL", "https://brightdesk-helpcenter.com/"),
             step("Read the page.", "Extract Text", "https://brightdesk-helpcenter.com/"),
             step("Check DNS.", "Retrieve DNS Record", "brightdesk-helpcenter.com"),
             final({"result": "false",
                    "reason": "An ordinary vendor help center with an up-to-date copyright, mail records "
                              "and a certificate from a major CA; no pressure or phone lure."})])

site(url="https://pc-sapo-tokyo.jp/", label="legitimate", type="technical_support", lang="ja",
     html=page("PCサポート東京",
               "<h1>PCサポート東京</h1><p>出張修理・データ復旧。料金表を公開しています。</p>"
               "<p>株式会社PCサポート東京 東京都千代田区1-2-3 電話 03-5555-0101 プライバシーポリシー</p>",
               lang="ja", links=[("/price", "料金表"), ("/company", "会社概要")]),
     whois=whois("pc-sapo-tokyo.jp", "2009-10-01", "Japan Registry Services", country="JP"),
     dns=dns("192.0.2.210"),
     certs=certs("pc-sapo-tokyo.jp", "C=JP, O=SECOM Trust Systems CO.,LTD., CN=SECOM Passport for Web SR 3.0 CA",
                 [("2023-10-01T00:00:00", "2024-10-31T00:00:00")], 10000),
     script=[step("ページを開く。", "Access URL", "https://pc-sapo-tokyo.jp/"),
             step("本文を確認する。", "Extract Text", "https://pc-sapo-tokyo.jp/"),
             step("リンクを確認する。", "Extract Hyperlink", "https://pc-sapo-tokyo.jp/"),
             final({"result": False,
                    "reason": "Company information with physical address and phone number, published price "
                              "list, privacy policy and a long-registered domain."})])

# ---------------------------------------------------------------- cryptocurrency

site(url="https://eth-giveaway-2x.com/", label="scam", type="cryptocurrency", lang="en",
     html=page("ETH Giveaway - Double your ETH",
               "<h1>Official 10,000 ETH Giveaway</h1><p>Send 0.1 to 20 ETH to the address below and receive "
               "2x back instantly. Only 37 minutes left!</p><code>0x1234abcd5678ef901234abcd5678ef901234abcd</code>"),
     whois=whois("eth-giveaway-2x.com", "2024-03-06", "NameCheap, Inc.", privacy=True),
     dns=dns("198.51.100.66", mx=False),
     certs=certs("eth-giveaway-2x.com", "C=US, O=Google Trust Services LLC, CN=WR3",
                 [("2024-03-06T00:00:00", "2024-06-04T00:00:00")], 10100),
     reddit={"eth-giveaway-2x": {
         "posts": [{"timestamp": "2024-03-07T12:00:00Z", "title": "PSA: eth-giveaway-2x is a scam",
                    "text": "Deepfake livestream pushing this site. Nobody gets anything back."}],
         "comments": [{"timestamp": "2024-03-07T12:30:00Z", "text": "Reported to the exchange, lost 0.5 ETH."}]}},
     script=[step("Open the giveaway page.", "Access URL", "https://eth-giveaway-2x.com/"),
             step("Read it.", "Extract Text", "https://eth-giveaway-2x.com/"),
             step("Look for Reddit reports.", "Search Reddit", "eth-giveaway-2x"),
             step("Check the registration date.", "Retrieve WHOIS", "eth-giveaway-2x.com"),
             final({"result": True, "scam_type": "cryptocurrency giveaway",
                    "reason": "Promises to double cryptocurrency sent to a wallet, a short timeframe to act, a "
                              "domain created days ago and Reddit reports of losses."})])

site(url="https://btc-airdrop-claim.net/", label="scam", type="cryptocurrency", lang="en",
     html=page("Claim your BTC Airdrop",
               "<h1>Bitcoin Airdrop Season 3</h1><p>Connect your wallet and enter your recovery phrase to "
               "claim 0.25 BTC. Eligibility verified automatically.</p><form><textarea name='seed'></textarea>"
               "<button>Claim</button></form>"),
     whois=whois("btc-airdrop-claim.net", "2024-03-04", "Hostinger Operations, UAB", privacy=True),
     dns=dns("203.0.113.66", mx=False),
     certs=certs("btc-airdrop-claim.net", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-03-04T00:00:00", "2024-06-02T00:00:00")], 10200),
     script=[step("Open the page.", "Access URL", "https://btc-airdrop-claim.net/"),
             step("Check how old the domain is.", "Check Domain Age", "btc-airdrop-claim.net"),
             step("That tool does not exist; use WHOIS instead.", "Retrieve WHOIS", "btc-airdrop-claim.net"),
             step("Read the page text.", "Extract Text", "https://btc-airdrop-claim.net/"),
             final({"result": True, "scam_type": "crypto airdrop",
                    "reason": "Asks for a wallet recovery phrase to claim free Bitcoin, a classic lure; the "
                              "domain was registered this month behind a privacy service."})])

site(url="https://kryptowallet-bonus.de/", label="scam", type="cryptocurrency", lang="de",
     html=page("Krypto Wallet Bonus",
               "<h1>Sichern Sie sich 500 € in Bitcoin</h1><p>Nur für kurze Zeit: Registrieren Sie Ihre "
               "Wallet und erhalten Sie einen Willkommensbonus. Einzahlung ab 250 € erforderlich.</p>",
               lang="de"),
     whois=whois("kryptowallet-bonus.de", "2024-02-25", "DENIC eG", privacy=True, country="DE"),
     dns="NXDOMAIN",
     certs=[],
     script=[step("Seite öffnen.", "Access URL", "https://kryptowallet-bonus.de/"),
             step("Text lesen.", "Extract Text", "https://kryptowallet-bonus.de/"),
             step("DNS prüfen.", "Retrieve DNS Record", "kryptowallet-bonus.de"),
             step("Zertifikate prüfen.", "Retrieve Certificate", "kryptowallet-bonus.de"),
             final({"result": True, "scam_type": "Bitcoin bonus",
                    "reason": "Free Bitcoin bonus that requires a deposit, short timeframe, inconsistent DNS "
                              "and no certificate history; no company information."})])

site(url="https://coinharbor-wallet.com/", label="legitimate", type="cryptocurrency", lang="en",
     html=page("CoinHarbor - Open-source Bitcoin wallet",
               "<h1>CoinHarbor Wallet</h1><p>An open-source, self-custody wallet. We will never ask for "
               "your recovery phrase. Source code and audits on our developer page.</p>"
               "<footer>CoinHarbor Labs GmbH, Zug. <a href='/privacy'>Privacy policy</a></footer>",
               links=[("/download", "Download"), ("/security", "Security"), ("/privacy", "Privacy policy")]),
     whois=whois("coinharbor-wallet.com", "2015-02-14", "Gandi SAS", country="CH"),
     dns=dns("198.51.100.90", txt="v=spf1 -all"),
     certs=certs("coinharbor-wallet.com", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-02-20T00:00:00", "2024-05-20T00:00:00"), ("2023-12-20T00:00:00", "2024-03-19T00:00:00"),
                  ("2023-10-20T00:00:00", "2024-01-18T00:00:00")], 10300),
     script=[step("Read the page text directly.", "Extract Text", "https://coinharbor-wallet.com/"),
             step("I need to access the page first.", "Access URL", "https://coinharbor-wallet.com/"),
             step("Now read it.", "Extract Text", "https://coinharbor-wallet.com/"),
             step("Check certificate history.", "Retrieve Certificate", "coinharbor-wallet.com"),
             final({"result": False,
                    "reason": "Open-source wallet that warns users never to share recovery phrases, with "
                              "company information, a privacy policy, a domain registered in 2015 and a "
                              "continuous certificate history."})])

site(url="https://blockstats-explorer.org/", label="legitimate", type="cryptocurrency", lang="en",
     html=page("BlockStats Explorer",
               "<h1>Blockchain explorer</h1><p>Latest block: 834,112. Mempool: 41,220 transactions. Data "
               "updated every 10 seconds.</p><p>Run by volunteers. Contact: team@blockstats-explorer.org</p>",
               links=[("/blocks", "Blocks"), ("/api", "API"), ("/about", "About")]),
     whois=whois("blockstats-explorer.org", "2013-07-09", "Tucows Domains Inc."),
     dns=dns("203.0.113.99"),
     certs=certs("blockstats-explorer.org", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-02-25T00:00:00", "2024-05-25T00:00:00")], 10400),
     search={"blockstats explorer": [
         {"url": "https://wiki.example.org/Block_explorers", "title": "List of block explorers",
          "summary": "BlockStats is a long-running community explorer."}]},
     script=[step("Open the site.", "Access URL", "https://blockstats-explorer.org/"),
             step("Read it.", "Extract Text", "https://blockstats-explorer.org/"),
             step("Search for background.", "Get Search Result", "blockstats explorer"),
             final({"result": False,
                    "reason": "An informational block explorer with contact information, up-to-date data, "
                              "no payment requests and a domain registered in 2013."})])

site(url="https://krypto-wissen.de/", label="legitimate", type="cryptocurrency", lang="de",
     html=page("Krypto-Wissen - Ratgeber",
               "<h1>Kryptowährungen verständlich erklärt</h1><p>Ratgeber zu Risiken, Steuern und sicherer "
               "Verwahrung. Wir verkaufen keine Coins.</p><p>Impressum: Redaktion Krypto-Wissen, "
               "Schillerstraße 8, 10625 Berlin, E-Mail redaktion@krypto-wissen.de</p>", lang="de",
               links=[("/impressum", "Impressum"), ("/datenschutz", "Datenschutz")]),
     whois=whois("krypto-wissen.de", "2017-11-20", "DENIC eG", country="DE"),
     dns=dns("192.0.2.120"),
     certs=certs("krypto-wissen.de", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-01-30T00:00:00", "2024-04-29T00:00:00")], 10500),
     script=[step("Seite öffnen.", "Access URL", "https://krypto-wissen.de/"),
             step("Text lesen.", "Extract Text", "https://krypto-wissen.de/"),
             final({"result": False, "scam_type": None,
                    "reason": "Educational content with full company information and contact email, no "
                              "payment or deposit requests."})])

# ---------------------------------------------------------------- investment

site(url="https://apex-yield-capital.com/", label="scam", type="investment", lang="en",
     html=page("Apex Yield Capital - 3% Daily Returns",
               "<h1>Earn 3% daily, guaranteed</h1><p>Our AI trading desk delivers guaranteed returns with "
               "zero risk. Minimum deposit $500. Refer friends for 10% bonus.</p><table><tr><td>Starter</td>"
               "<td>3% daily for 30 days</td></tr><tr><td>VIP</td><td>5% daily for 60 days</td></tr></table>"),
     whois=whois("apex-yield-capital.com", "2024-02-15", "NameSilo, LLC", privacy=True),
     dns=dns("198.51.100.33", mx=False),
     certs=certs("apex-yield-capital.com", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-02-16T00:00:00", "2024-05-16T00:00:00")], 10600),
     search={"apex yield capital": [
         {"url": "https://regulator.example.gov/warnings/apex-yield-capital", "title": "Investor alert",
          "summary": "Apex Yield Capital is not authorised to provide financial services."}]},
     script=[step("Open the site.", "Access URL", "https://apex-yield-capital.com/"),
             step("Read the offer.", "Extract Text", "https://apex-yield-capital.com/"),
             step("Search for regulator warnings.", "Get Search Result", "apex yield capital"),
             final({"result": True, "scam_type": "high yield investment program",
                    "reason": "Guaranteed returns of 3% daily are unrealistic; a regulator warning exists, the "
                              "domain is new and behind a privacy service, and there is no company "
                              "information."})])

site(url="https://quantum-forex-profits.net/", label="scam", type="investment", lang="en",
     html=page("Quantum Forex Profits",
               "<h1>Let our quantum algorithm trade for you</h1><p>Members made $12,450 last week. Spots "
               "limited to 50 new traders. Deposit with card or crypto.</p>",
               links=[("/register", "Register"), ("/testimonials", "Testimonials")]),
     whois=whois("quantum-forex-profits.net", "2024-01-29", "PDR Ltd. d/b/a PublicDomainRegistry.com",
                 privacy=True),
     dns=dns("203.0.113.33", mx=False),
     certs=certs("quantum-forex-profits.net", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-01-30T00:00:00", "2024-04-29T00:00:00")], 10700),
     x={"quantum forex profits": [{"timestamp": "2024-02-20T10:00:00Z",
                                   "text": "Quantum Forex Profits won't let me withdraw. Support stopped answering."}]},
     reddit={"quantum forex profits": {
         "posts": [{"timestamp": "2024-02-21T08:00:00Z", "title": "Quantum Forex Profits withdrawal blocked",
                    "text": "They want a 20% 'tax' before releasing funds."}], "comments": []}},
     search={"quantum forex profits review": [
         {"url": "https://brokerwatch.example.com/quantum-forex-profits", "title": "Quantum Forex Profits review",
          "summary": "Unregulated; many complaints about withdrawals."}]},
     script=[step("Open the site.", "Access URL", "https://quantum-forex-profits.net/"),
             step("Read the page.", "Extract Text", "https://quantum-forex-profits.net/"),
             step("Check the links.", "Extract Hyperlink", "https://quantum-forex-profits.net/"),
             step("Check WHOIS.", "Retrieve WHOIS", "quantum-forex-profits.net"),
             step("Check DNS.", "Retrieve DNS Record", "quantum-forex-profits.net"),
             step("Check certificates.", "Retrieve Certificate", "quantum-forex-profits.net"),
             step("Search for reviews.", "Get Search Result", "quantum forex profits review"),
             step("Search X.", "Search X/Twitter", "quantum forex profits"),
             step("Search Reddit.", "Search Reddit", "quantum forex profits"),
             step("Look at the testimonials page.", "Access URL", "https://quantum-forex-profits.net/testimonials"),
             final({"result": True, "scam_type": "forex trading",
                    "reason": "Unrealistic profits and limited spots create urgency; reviews, Twitter and "
                              "Reddit report blocked withdrawals; the domain is new with a privacy service."})])

site(url="https://toushi-rieki-club.jp/", label="scam", type="investment", lang="ja",
     html=page("投資利益クラブ",
               "<h1>元本保証・月利20%</h1><p>LINEで登録するだけ。著名投資家が教える必勝法。今なら参加費無料。</p>",
               lang="ja"),
     whois=whois("toushi-rieki-club.jp", "2024-02-10", "GMO Internet Group, Inc.", privacy=True, country="JP"),
     dns=dns("192.0.2.33", mx=False),
     certs=certs("toushi-rieki-club.jp", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-02-11T00:00:00", "2024-05-11T00:00:00")], 10800),
     script=[step("ページを開く。", "Access URL", "https://toushi-rieki-club.jp/"),
             step("本文を確認する。", "Extract Text", "https://toushi-rieki-club.jp/"),
             step("ドメイン情報を確認する。", "Retrieve WHOIS", "toushi-rieki-club.jp"),
             final({"result": True, "scam_type": "investment",
                    "reason": "Guaranteed principal with 20% monthly high return is unrealistic, recruitment "
                              "through a messaging app, new domain with privacy service and no company "
                              "information."})])

site(url="https://evergreen-index-funds.com/", label="legitimate", type="investment", lang="en",
     html=page("Evergreen Index Funds",
               "<h1>Low-cost index investing</h1><p>Past performance does not guarantee future results. "
               "Investing involves risk, including loss of principal. Fund prospectus and fees are "
               "published for every fund.</p><footer>Evergreen Asset Management LLC, SEC-registered "
               "investment adviser. 55 Water St, New York, NY. <a href='/privacy'>Privacy policy</a></footer>",
               links=[("/funds", "Funds"), ("/prospectus", "Prospectus"), ("/privacy", "Privacy policy")]),
     whois=whois("evergreen-index-funds.com", "2004-03-12", "MarkMonitor Inc."),
     dns=dns("203.0.113.55", txt="v=spf1 include:_spf.mailhost.net ~all"),
     certs=certs("evergreen-index-funds.com", "C=US, O=DigiCert Inc, CN=DigiCert Global G2 TLS RSA SHA256 2020 CA1",
                 [("2024-03-01T00:00:00", "2025-03-01T00:00:00")], 10900),
     script=[step("Open the site.", "Access URL", "https://evergreen-index-funds.com/"),
             step("Read the page.", "Extract Text", "https://evergreen-index-funds.com/"),
             step("Check the domain.", "Retrieve WHOIS", "evergreen-index-funds.com"),
             final({"result": False, "scam_type": None,
                    "reason": "Risk disclosures instead of guaranteed returns, regulator registration, "
                              "physical address, privacy policy and a domain registered since 2004."})])

site(url="https://riverside-credit-union.org/", label="legitimate", type="investment", lang="en",
     html=page("Riverside Credit Union",
               "<h1>Savings, loans and retirement accounts</h1><p>Share certificates from 4.10% APY. "
               "Federally insured by NCUA.</p><p>Call us at (555) 010-2200 or visit any branch.</p>",
               links=[("/rates", "Rates"), ("/branches", "Branches"), ("/privacy", "Privacy")]),
     whois=whois("riverside-credit-union.org", "1999-12-01", "Network Solutions, LLC"),
     dns=dns("198.51.100.55"),
     certs=certs("riverside-credit-union.org", "C=US, O=Entrust, Inc., CN=Entrust Certification Authority - L1K",
                 [("2023-09-01T00:00:00", "2024-09-30T00:00:00")], 11000),
     script=[step("Open the site.", "Access URL", "https://riverside-credit-union.org/"),
             step("Read the page.", "Extract Text", "https://riverside-credit-union.org/"),
             step("Check certificate.", "Retrieve Certificate", "riverside-credit-union.org"),
             final({"result": False,
                    "reason": "Ordinary savings rates, deposit insurance, branch network with phone number "
                              "and a certificate from a commercial CA on a domain registered in 1999."})])

site(url="https://sparplan-vergleich.de/", label="legitimate", type="investment", lang="de",
     html=page("Sparplan-Vergleich",
               "<h1>ETF-Sparpläne im Vergleich</h1><p>Unabhängiger Vergleich von Ordergebühren. Keine "
               "Anlageberatung. Kapitalanlagen sind mit Risiken verbunden.</p><p>Impressum: Vergleich "
               "Medien UG, Hafenstraße 3, 20359 Hamburg</p>", lang="de",
               links=[("/impressum", "Impressum"), ("/datenschutz", "Datenschutz")]),
     whois=whois("sparplan-vergleich.de", "2016-04-04", "DENIC eG", country="DE"),
     dns=dns("192.0.2.55"),
     certs=certs("sparplan-vergleich.de", "C=US, O=Let's Encrypt, CN=R3",
                 [("2024-02-12T00:00:00", "2024-05-12T00:00:00")], 11100),
     script=[step("Seite öffnen.", "Access URL", "https://sparplan-vergleich.de/"),
             step("Text lesen.", "Extract Text", "https://sparplan-vergleich.de/"),
             final({"result": False,
                    "reason": "Comparison site with risk notices instead of high return promises, company "
                              "information in the imprint and no payment requests."})])

# Entries kept in the dataset but excluded by the pipeline; they never reach the agent.
EXCLUDED = [
    {"url": "https://gone-store-2023.shop/", "label": "scam", "scam_type": "online_shopping", "language": "en",
     "source": "demo", "accessible": False, "excluded_reason": "inaccessible:dns"},
    {"url": "https://www.popular-portal.com/", "label": "legitimate", "scam_type": "online_shopping",
     "language": "en", "source": "demo", "accessible": None, "excluded_reason": "toplist"},
]


def build():
    web = ROOT / "web"
    pages_dir = web / "pages"
    pages_dir.mkdir(parents=True, exist_ok=True)
    scripts_dir = ROOT / "scripts"
    scripts_dir.mkdir(parents=True, exist_ok=True)

    world = {"pages": {}, "search": {}, "x": {}, "reddit": {}, "whois": {}, "dns": {}, "certs": {}}
    index = {}
    dataset = []
    for i, s in enumerate(SITES, 1):
        url = s["url"]
        domain = url.split("/")[2]
        name = f"{i:02d}_{domain}"
        (pages_dir / f"{name}.html").write_text(s["html"], encoding="utf-8")
        world["pages"][url] = {"status": 200, "body_file": f"pages/{name}.html"}
        world["whois"][domain] = s["whois"]
        world["dns"][domain] = s["dns"]
        world["certs"][domain] = s["certs"]
        for key in ("search", "x", "reddit"):
            world[key].update(s.get(key, {}))
        (scripts_dir / f"{name}.json").write_text(json.dumps(s["script"], ensure_ascii=False, indent=2) + "\n",
                                                  encoding="utf-8")
        index[url] = f"{name}.json"
        dataset.append({"url": url, "label": s["label"], "scam_type": s["type"], "language": s["lang"],
                        "source": "demo", "accessible": True})

    # A testimonials page for the budget-exhaustion session, and a redirect.
    world["pages"]["https://quantum-forex-profits.net/testimonials"] = {
        "status": 200, "body": page("Testimonials", "<p>\"I doubled my money in a week!\" - John D.</p>")}
    world["pages"]["http://luxe-bag-outlet.shop/"] = {"status": 301, "redirect": "https://luxe-bag-outlet.shop/"}
    world["pages"]["https://gone-store-2023.shop/"] = {"error": "dns"}

    (web / "world.json").write_text(json.dumps(world, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
                                    encoding="utf-8")
    (scripts_dir / "index.json").write_text(json.dumps(index, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    with open(ROOT / "dataset.jsonl", "w", encoding="utf-8") as f:
        for e in dataset + EXCLUDED:
            f.write(json.dumps({"schema_version": 1, **e}, ensure_ascii=False, sort_keys=True) + "\n")


if __name__ == "__main__":
    build()
